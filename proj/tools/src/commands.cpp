// Copyright 2026 The colpursuit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "colpursuit_cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "colpursuit/evaluation.hpp"
#include "colpursuit/matrix_io.hpp"
#include "colpursuit/parallel.hpp"
#include "colpursuit/rng.hpp"
#include "colpursuit/sampling.hpp"
#include "colpursuit/solvers.hpp"
#include "colpursuit_cli/scene.hpp"

namespace colpursuit::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json solve_info_json(const SolveInfo& info) {
  return {{"iterations", info.iterations},     {"converged", info.converged},
          {"primal_res1", info.primal_res1},   {"primal_res2", info.primal_res2},
          {"objective", info.objective},       {"gamma", info.weights.gamma},
          {"mu", info.weights.mu}};
}

const Matrix& reference_of(const SyntheticScene& scene) {
  return has_ground_truth(scene) ? scene.L : scene.D;
}

struct SampleSummary {
  SelectionRecord record;
  bool converged = true;
};

SampleSummary sample_into(const ExperimentConfig& cfg, const SyntheticScene& scene,
                          OutputSet& out, const std::string& prefix) {
  const Matrix& D = scene.D;
  const Matrix& reference = reference_of(scene);
  const SolverConfig& solver = cfg.solver();
  Alg1Config alg = cfg.sample.alg;
  alg.seed = cfg.seed;

  SampleSummary s;
  json j;
  j["mode"] = mode_name(cfg.sample.mode);
  j["seed"] = cfg.seed;
  j["shape"] = {D.rows(), D.cols()};
  try {
    switch (cfg.sample.mode) {
      case SampleMode::kDirect: {
        const SelectionResult r = solve_selfexpress(D, D, solver);
        j["p"] = to_std(r.p);
        j["solver"] = solve_info_json(r.info);
        s.record.selected = r.selected;
        s.converged = r.info.converged;
        break;
      }
      case SampleMode::kSketched: {
        const Index m2 = alg.rows_to_sample();
        if (m2 < 1 || m2 > D.rows())
          throw ConfigError("row sketch size " + std::to_string(m2) + " outside [1, " +
                            std::to_string(D.rows()) + "]");
        Engine engine(derive_seed(cfg.seed, Stream::kRowSketch));
        const IndexList rows = sample_without_replacement(D.rows(), m2, engine);
        const Matrix Dr = select_rows(D, rows);
        const SelectionResult r = solve_selfexpress(Dr, Dr, solver);
        j["rows"] = rows;
        j["p"] = to_std(r.p);
        j["solver"] = solve_info_json(r.info);
        s.record.selected = r.selected;
        s.converged = r.info.converged;
        break;
      }
      case SampleMode::kOutlierRobust: {
        const OutlierRobustResult r = solve_outlier_robust(D, solver);
        IndexList absorbed;
        for (Index c = 0; c < r.E_star.cols(); ++c)
          if (r.E_star.col(c).norm() > 0.0) absorbed.push_back(c);
        j["p"] = to_std(r.selection.p);
        j["outlier_columns"] = absorbed;
        j["solver"] = solve_info_json(r.selection.info);
        s.record.selected = r.selection.selected;
        s.converged = r.selection.info.converged;
        break;
      }
      case SampleMode::kAlg1: {
        const Alg1Result r = algorithm1(D, alg);
        j["rows"] = r.state.row_indices;
        j["sampled"] = r.sampled;
        j["informative"] = r.informative;
        j["history"] = r.history;
        j["ranks_from_ground_truth"] = has_ground_truth(scene);
        std::string trace = "iteration,columns,rank\n";
        for (std::size_t k = 0; k < r.history.size(); ++k)
          trace += std::to_string(k) + "," + std::to_string(r.history[k].size()) + "," +
                   std::to_string(rank_of(select_columns(reference, r.history[k]))) + "\n";
        out.add(prefix + "alg1_trace.csv", trace);
        if (cfg.sample.write_residual) out.add(prefix + "F.csv", to_csv(r.state.F));
        s.record.selected = r.sampled;
        s.record.informative = r.informative;
        s.converged = r.all_converged;
        break;
      }
      case SampleMode::kAlg2: {
        const Alg2Result r =
            algorithm2(D, alg, cfg.sample.j_max, has_ground_truth(scene) ? &scene.L : nullptr);
        j["cols"] = r.cols;
        j["rows"] = r.rows;
        j["initial_r_w"] = r.initial_r_w;
        j["ranks_from_ground_truth"] = r.trace_from_ground_truth;
        json trace = json::array();
        std::string csv = "cycle,r_c,r_w\n";
        for (std::size_t c = 0; c < r.trace.size(); ++c) {
          trace.push_back({{"r_c", r.trace[c].r_c}, {"r_w", r.trace[c].r_w}});
          csv += std::to_string(c + 1) + "," + std::to_string(r.trace[c].r_c) + "," +
                 std::to_string(r.trace[c].r_w) + "\n";
        }
        j["trace"] = trace;
        out.add(prefix + "trace.csv", csv);
        s.record.selected = r.cols;
        s.converged = r.all_converged;
        break;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sample: ") + e.what());
  }
  j["selected"] = s.record.selected;
  j["converged"] = s.converged;
  out.add(prefix + "selection.json", j.dump(2) + "\n");
  return s;
}

void check_indices(const IndexList& idx, Index cols) {
  for (Index j : idx)
    if (j < 0 || j >= cols)
      throw ConfigError("selection index " + std::to_string(j) + " outside the scene's " +
                        std::to_string(cols) + " columns");
}

void eval_into(const SelectionRecord& sel, const SyntheticScene& scene, const EvalConfig& eval,
               std::uint64_t seed, bool require_clusters, int jobs, OutputSet& out,
               const std::string& prefix) {
  if (require_clusters && !scene.has_labels())
    throw ConfigError("cluster metrics requested but the scene has no labels");
  check_indices(sel.selected, scene.cols());
  if (sel.informative) check_indices(*sel.informative, scene.cols());

  SyntheticScene proxy;
  const SyntheticScene* ref = &scene;
  if (!has_ground_truth(scene)) {
    proxy.L = scene.D;
    ref = &proxy;
  }
  const EvalReport rep = evaluate_selection(*ref, sel.selected);
  json j;
  j["ground_truth"] = has_ground_truth(scene);
  j["selected"] = rep.selected;
  j["numerical_rank"] = rep.numerical_rank;
  j["true_rank"] = rank_of(ref->L);
  j["coherence_mu_v"] = rep.coherence_mu_v;
  j["recovery_error"] = rep.recovery_error;
  if (scene.has_labels()) {
    const ClusterCoverage cov = cluster_coverage(sel.selected, scene);
    json counts = json::object();
    for (const auto& [label, n] : cov.per_cluster) counts[std::to_string(label)] = n;
    j["per_cluster_counts"] = counts;
    j["outliers_sampled"] = cov.outliers_sampled;
  }
  if (sel.informative) {
    const IndexList& inf = *sel.informative;
    json k;
    k["selected"] = inf.size();
    k["numerical_rank"] = inf.empty() ? Index{0} : rank_of(select_columns(ref->L, inf));
    k["recovery_error"] = inf.empty() ? 1.0 : recovery_error(ref->L, inf);
    j["informative"] = k;
  }
  out.add(prefix + "report.json", j.dump(2) + "\n");

  if (!eval.curve_grid.empty()) {
    for (Index m : eval.curve_grid)
      if (m > scene.cols())
        throw ConfigError("eval.curve_grid entry " + std::to_string(m) + " exceeds " +
                          std::to_string(scene.cols()) + " columns");
    const auto curve = random_sampling_curve(ref->L, eval.curve_grid, eval.curve_trials, seed, jobs);
    std::string csv = "m,mean_rank,mean_error\n";
    for (const CurvePoint& p : curve)
      csv += std::to_string(p.m) + "," + fmt(p.mean_rank) + "," + fmt(p.mean_error) + "\n";
    out.add(prefix + "curve.csv", csv);
  }
}

Outcome run_sweep(const ExperimentConfig& cfg, int jobs) {
  if (cfg.sweep_outliers.empty()) throw ConfigError("fig7-sweep needs sweep_outliers");
  if (!cfg.scene.generated()) throw ConfigError("fig7-sweep generates its scenes; drop scene.input");
  const int n = static_cast<int>(cfg.sweep_outliers.size());
  std::vector<OutputSet> parts(static_cast<std::size_t>(n));
  std::vector<std::string> rows(static_cast<std::size_t>(n));
  std::vector<char> converged(static_cast<std::size_t>(n), 1);
  parallel_for(n, jobs, [&](int i) {
    const Index n_o = cfg.sweep_outliers[static_cast<std::size_t>(i)];
    ExperimentConfig local = cfg;
    local.scene.outliers = n_o;
    local.scene.outlier_indices.clear();
    const SyntheticScene scene = build_scene(local.scene, cfg.seed);
    const std::string prefix = "sweep/n_o_" + std::to_string(n_o) + "/";
    const SampleSummary s = sample_into(local, scene, parts[static_cast<std::size_t>(i)], prefix);
    const ClusterCoverage cov = cluster_coverage(s.record.selected, scene);
    Index inliers = 0;
    for (const auto& [label, count] : cov.per_cluster) inliers += count;
    rows[static_cast<std::size_t>(i)] = std::to_string(n_o) + "," + std::to_string(scene.cols()) +
                                        "," + std::to_string(s.record.selected.size()) + "," +
                                        std::to_string(inliers) + "," +
                                        std::to_string(cov.outliers_sampled) + "," +
                                        (s.converged ? "1" : "0") + "\n";
    converged[static_cast<std::size_t>(i)] = s.converged;
  });
  Outcome out;
  std::string csv = "n_o,columns,selected,inliers_sampled,outliers_sampled,converged\n";
  for (int i = 0; i < n; ++i) {
    csv += rows[static_cast<std::size_t>(i)];
    for (const auto& [name, bytes] : parts[static_cast<std::size_t>(i)].files()) out.files.add(name, bytes);
    out.converged = out.converged && converged[static_cast<std::size_t>(i)];
  }
  out.files.add("sweep.csv", csv);
  return out;
}

IndexList stride(Index begin, Index end, Index step) {
  IndexList out;
  for (Index j = begin; j < end; j += step) out.push_back(j);
  return out;
}

SolverConfig preset_solver(double gamma_rel) {
  SolverConfig s;
  s.gamma_rel = gamma_rel;
  s.mu_scale = 100.0;
  s.max_iters = 2000;
  s.tol = 1e-4;
  return s;
}

}  // namespace

SelectionRecord parse_selection(std::string_view json_text) {
  SelectionRecord rec;
  try {
    const json j = json::parse(json_text);
    if (!j.contains("selected")) throw ConfigError("selection file has no 'selected' field");
    rec.selected = j.at("selected").get<IndexList>();
    if (j.contains("informative")) rec.informative = j.at("informative").get<IndexList>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("selection file: ") + e.what());
  }
  return rec;
}

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = {"fig1", "fig2",   "fig4",       "fig5-outliers",
                                               "fig6", "table1", "fig7-sweep", "custom"};
  return ids;
}

ExperimentConfig preset_config(std::string_view id) {
  ExperimentConfig c;
  c.experiment = std::string(id);
  c.seed = 1;
  SceneConfig& s = c.scene;
  SampleConfig& m = c.sample;
  const double root10 = std::sqrt(10.0);

  if (id == "fig1") {
    // Non-uniform union of 60 lines: 30 clusters of 5 columns, 30 of 20.
    s.rows = 500;
    s.clusters = {{30, 5, 1, 1.0}, {30, 20, 1, 1.0}};
    s.rho = 0.01;
    m.mode = SampleMode::kAlg1;
    m.alg.r_hat = 60;
    m.alg.row_count = 250;
    m.alg.k_max = 2;
    m.alg.solver = preset_solver(40.0);
    c.eval.curve_grid = {10, 25, 50, 75, 100, 150, 200, 250, 300, 350, 375, 400, 450, 500, 600, 700, 750};
    c.eval.curve_trials = 100;
  } else if (id == "fig2") {
    s.rows = 100;
    s.clusters = {{1, 100, 5, 1.0}, {1, 100, 1, 1.0}, {1, 100, 5, 1.0}, {1, 100, 1, 1.0}};
    s.rho = 0.02;
    m.mode = SampleMode::kDirect;
    m.alg.solver = preset_solver(50.0);
  } else if (id == "fig4") {
    // [L1 L2] + S with independent column spaces; the dictionary starts in L1.
    s.rows = 50;
    s.clusters = {{1, 180, 5, 1.0}, {1, 20, 5, 1.0}};
    s.rho = 0.01;
    m.mode = SampleMode::kAlg1;
    m.alg.r_hat = 10;
    m.alg.row_count = 50;
    m.alg.k_max = 1;
    m.alg.initial_column_list = stride(0, 180, 18);
    m.write_residual = true;
    m.alg.solver = preset_solver(20.0);
  } else if (id == "fig5-outliers") {
    s.rows = 50;
    s.clusters = {{1, 100, 5, 1.0}, {1, 250, 2, 1.0}};
    s.rho = 0.01;
    s.outliers = 50;
    m.mode = SampleMode::kOutlierRobust;
    m.alg.solver = preset_solver(40.0);
    m.alg.solver.lambda = 1.0;
  } else if (id == "fig6") {
    // 30 clusters of 20 columns and 30 singletons at amplitude sqrt(10).
    s.rows = 200;
    s.clusters = {{30, 20, 1, 1.0}, {30, 1, 1, root10}};
    s.rho = 0.01;
    m.mode = SampleMode::kAlg1;
    m.alg.r_hat = 60;
    m.alg.row_count = 100;
    m.alg.k_max = 3;
    m.alg.solver = preset_solver(20.0);
    c.eval.curve_grid = {10, 30, 60, 100, 150, 200, 300, 400, 500, 630};
    c.eval.curve_trials = 20;
  } else if (id == "table1") {
    s.rows = 630;
    s.clusters = {{10, 60, 1, 1.0}, {10, 3, 1, root10}};
    s.row_clusters = s.clusters;
    s.rho = 0.01;
    m.mode = SampleMode::kAlg2;
    m.alg.r_hat = 20;
    m.alg.c1 = 2;
    m.j_max = 5;
    m.alg.solver = preset_solver(20.0);
  } else if (id == "fig7-sweep") {
    s.rows = 50;
    s.clusters = {{1, 100, 5, 1.0}};
    s.append_outliers = true;
    c.sweep_outliers = {50, 150, 300, 600};
    m.mode = SampleMode::kOutlierRobust;
    m.alg.solver = preset_solver(40.0);
    m.alg.solver.lambda = 1.0;
  } else if (id == "custom") {
    throw ConfigError("the custom preset runs the file given with --config");
  } else {
    throw ConfigError("unknown preset '" + std::string(id) + "'");
  }
  validate(c);
  return c;
}

Outcome run_gen(const ExperimentConfig& cfg) {
  if (!cfg.scene.generated()) throw ConfigError("gen needs a generated scene, not scene.input");
  Outcome out;
  add_scene_files(out.files, build_scene(cfg.scene, cfg.seed), cfg.scene.format);
  return out;
}

Outcome run_sample(const ExperimentConfig& cfg, const SyntheticScene& scene, int) {
  Outcome out;
  out.converged = sample_into(cfg, scene, out.files, "").converged;
  return out;
}

Outcome run_eval(const SelectionRecord& selection, const SyntheticScene& scene,
                 const EvalConfig& eval, std::uint64_t seed, bool require_clusters, int jobs) {
  Outcome out;
  eval_into(selection, scene, eval, seed, require_clusters, jobs, out.files, "");
  return out;
}

Outcome run_experiment(const ExperimentConfig& cfg, int jobs) {
  validate(cfg);
  Outcome out;
  if (cfg.experiment == "fig7-sweep") {
    out = run_sweep(cfg, jobs);
  } else {
    const SyntheticScene scene = resolve_scene(cfg.scene, cfg.seed);
    if (cfg.scene.generated()) add_scene_files(out.files, scene, cfg.scene.format, "scene/");
    const SampleSummary s = sample_into(cfg, scene, out.files, "");
    out.converged = s.converged;
    eval_into(s.record, scene, cfg.eval, cfg.seed, false, jobs, out.files, "");
  }
  out.files.add("config.toml", dump_config(cfg));
  return out;
}

namespace {

ExperimentConfig config_from(const std::string& config_path, const std::string& preset) {
  if (!config_path.empty() && !preset.empty())
    throw ConfigError("give either --config or --preset, not both");
  if (!config_path.empty()) return load_config(config_path);
  if (!preset.empty()) return preset_config(preset);
  throw ConfigError("--config or --preset is required");
}

std::string read_file_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int finish(const Outcome& outcome, const std::string& out_dir) {
  outcome.files.commit(out_dir);
  if (!outcome.converged)
    std::cerr << "warning: a solve hit max_iters before converging; results are flagged\n";
  return outcome.exit_code();
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Robust informative column sampling: scene generation, sampling, evaluation"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_dir, scene_path, selection_path, preset_id;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool require_clusters = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed overriding the config");
    sub->add_option("--out", out_dir, "Output directory")->required();
    sub->add_option("--jobs", jobs, "Worker threads for Monte-Carlo work")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic scene");
  gen->add_option("--config", config_path, "TOML experiment config");
  gen->add_option("--preset", preset_name, "Use a preset's scene");
  add_common(gen);

  CLI::App* sample = app.add_subcommand("sample", "Select informative columns");
  sample->add_option("--config", config_path, "TOML experiment config");
  sample->add_option("--preset", preset_name, "Use a preset's configuration");
  sample->add_option("--scene", scene_path, "Scene directory or matrix file (overrides the config)");
  add_common(sample);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a selection against a scene");
  eval->add_option("--selection", selection_path, "selection.json from sample")->required();
  eval->add_option("--scene", scene_path, "Scene directory or matrix file")->required();
  eval->add_option("--config", config_path, "Config whose [eval] section adds curves");
  eval->add_flag("--cluster-metrics", require_clusters, "Fail unless the scene has labels");
  add_common(eval);

  std::string ids;
  for (const std::string& id : preset_ids()) ids += (ids.empty() ? "" : ", ") + id;
  CLI::App* preset = app.add_subcommand("preset", "Run a paper experiment end to end");
  preset->add_option("id", preset_id, "One of: " + ids)->required();
  preset->add_option("--config", config_path, "Config for the custom preset");
  add_common(preset);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto apply_seed = [&](CLI::App* sub, ExperimentConfig& cfg) {
      if (sub->count("--seed")) cfg.seed = seed;
    };
    if (gen->parsed()) {
      ExperimentConfig cfg = config_from(config_path, preset_name);
      apply_seed(gen, cfg);
      return finish(run_gen(cfg), out_dir);
    }
    if (sample->parsed()) {
      ExperimentConfig cfg = config_from(config_path, preset_name);
      apply_seed(sample, cfg);
      if (!scene_path.empty()) cfg.scene.input = scene_path;
      const SyntheticScene scene = resolve_scene(cfg.scene, cfg.seed);
      return finish(run_sample(cfg, scene, jobs), out_dir);
    }
    if (eval->parsed()) {
      ExperimentConfig cfg;
      if (!config_path.empty()) cfg = load_config(config_path);
      apply_seed(eval, cfg);
      const SelectionRecord sel = parse_selection(read_file_text(selection_path));
      const SyntheticScene scene = load_scene(scene_path);
      return finish(run_eval(sel, scene, cfg.eval, cfg.seed, require_clusters, jobs), out_dir);
    }
    ExperimentConfig cfg;
    if (preset_id == "custom") {
      if (config_path.empty()) throw ConfigError("preset custom needs --config");
      cfg = load_config(config_path);
    } else {
      if (!config_path.empty()) throw ConfigError("--config is only read by the custom preset");
      cfg = preset_config(preset_id);
    }
    apply_seed(preset, cfg);
    return finish(run_experiment(cfg, jobs), out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace colpursuit::cli
