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


#include "colpursuit_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

#include <toml.hpp>

namespace colpursuit::cli {

namespace {

constexpr std::string_view kExperiments[] = {"fig1",  "fig2",          "fig4",       "fig5-outliers",
                                             "fig6",  "table1",        "fig7-sweep", "custom"};

[[noreturn]] void fail(std::string_view where, std::string_view what) {
  throw ConfigError(std::string(where) + ": " + std::string(what));
}

void check_keys(const toml::table& t, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  for (auto&& [key, value] : t) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key.str()) == allowed.end())
      fail(where, "unknown key '" + std::string(key.str()) + "'");
  }
}

std::string path_of(std::string_view where, std::string_view key) {
  return where.empty() ? std::string(key) : std::string(where) + "." + std::string(key);
}

std::optional<std::int64_t> get_int(const toml::table& t, std::string_view key,
                                    std::string_view where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (!n->is_integer()) fail(path_of(where, key), "expected an integer");
  return n->value<std::int64_t>();
}

std::optional<double> get_double(const toml::table& t, std::string_view key,
                                 std::string_view where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (!n->is_number()) fail(path_of(where, key), "expected a number");
  return n->value<double>();
}

std::optional<bool> get_bool(const toml::table& t, std::string_view key, std::string_view where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (!n->is_boolean()) fail(path_of(where, key), "expected true or false");
  return n->value<bool>();
}

std::optional<std::string> get_string(const toml::table& t, std::string_view key,
                                      std::string_view where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (!n->is_string()) fail(path_of(where, key), "expected a string");
  return n->value<std::string>();
}

std::optional<IndexList> get_index_array(const toml::table& t, std::string_view key,
                                         std::string_view where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  const toml::array* arr = n->as_array();
  if (!arr) fail(path_of(where, key), "expected an array of integers");
  IndexList out;
  for (const toml::node& item : *arr) {
    if (!item.is_integer()) fail(path_of(where, key), "expected an array of integers");
    out.push_back(static_cast<Index>(*item.value<std::int64_t>()));
  }
  return out;
}

const toml::table* get_table(const toml::table& t, std::string_view key) {
  const toml::node* n = t.get(key);
  if (!n) return nullptr;
  const toml::table* sub = n->as_table();
  if (!sub) fail(key, "expected a table");
  return sub;
}

std::vector<ClusterGroup> get_groups(const toml::table& t, std::string_view key,
                                     std::string_view where) {
  std::vector<ClusterGroup> out;
  const toml::node* n = t.get(key);
  if (!n) return out;
  const std::string at = path_of(where, key);
  const toml::array* arr = n->as_array();
  if (!arr) fail(at, "expected an array of tables");
  for (const toml::node& item : *arr) {
    const toml::table* g = item.as_table();
    if (!g) fail(at, "expected an array of tables");
    check_keys(*g, at, {"count", "size", "rank", "amplitude"});
    ClusterGroup group;
    if (auto v = get_int(*g, "count", at)) group.count = *v;
    if (auto v = get_int(*g, "size", at)) group.size = *v;
    if (auto v = get_int(*g, "rank", at)) group.rank = *v;
    if (auto v = get_double(*g, "amplitude", at)) group.amplitude = *v;
    if (!g->get("size")) fail(at, "cluster group needs a size");
    out.push_back(group);
  }
  return out;
}

void parse_scene(const toml::table& t, const std::filesystem::path& base_dir, SceneConfig& s) {
  constexpr std::string_view at = "scene";
  check_keys(t, at,
             {"input", "rows", "clusters", "row_clusters", "rho", "sparse", "sparse_scale",
              "outliers", "outlier_indices", "append_outliers", "format"});
  if (auto v = get_string(t, "input", at)) {
    std::filesystem::path p(*v);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    s.input = p.string();
  }
  if (auto v = get_int(t, "rows", at)) s.rows = *v;
  s.clusters = get_groups(t, "clusters", at);
  s.row_clusters = get_groups(t, "row_clusters", at);
  if (auto v = get_double(t, "rho", at)) s.rho = *v;
  if (auto v = get_string(t, "sparse", at)) {
    if (*v == "gaussian") s.sparse_kind = MagnitudeDist::Kind::kGaussian;
    else if (*v == "uniform") s.sparse_kind = MagnitudeDist::Kind::kUniform;
    else fail("scene.sparse", "expected 'gaussian' or 'uniform'");
  }
  if (auto v = get_double(t, "sparse_scale", at)) s.sparse_scale = *v;
  if (auto v = get_int(t, "outliers", at)) s.outliers = *v;
  if (auto v = get_index_array(t, "outlier_indices", at)) s.outlier_indices = *v;
  if (auto v = get_bool(t, "append_outliers", at)) s.append_outliers = *v;
  if (auto v = get_string(t, "format", at)) {
    try {
      s.format = parse_format(*v);
    } catch (const std::invalid_argument& e) {
      fail("scene.format", e.what());
    }
  }
}

void parse_solver(const toml::table& t, SolverConfig& s) {
  constexpr std::string_view at = "solver";
  check_keys(t, at,
             {"gamma", "gamma_rel", "lambda", "mu", "mu_scale", "max_iters", "tol",
              "zero_row_eps", "selection_threshold"});
  if (auto v = get_double(t, "gamma", at)) s.gamma = *v;
  if (auto v = get_double(t, "gamma_rel", at)) s.gamma_rel = *v;
  if (auto v = get_double(t, "lambda", at)) s.lambda = *v;
  if (auto v = get_double(t, "mu", at)) s.mu = *v;
  if (auto v = get_double(t, "mu_scale", at)) s.mu_scale = *v;
  if (auto v = get_int(t, "max_iters", at)) s.max_iters = static_cast<int>(*v);
  if (auto v = get_double(t, "tol", at)) s.tol = *v;
  if (auto v = get_double(t, "zero_row_eps", at)) s.zero_row_eps = *v;
  if (auto v = get_double(t, "selection_threshold", at)) s.selection_threshold = *v;
}

void parse_sample(const toml::table& t, SampleConfig& s) {
  constexpr std::string_view at = "sample";
  check_keys(t, at,
             {"mode", "r_hat", "c1", "c2", "tau", "k_max", "row_count", "initial_columns",
              "j_max", "write_residual"});
  if (auto v = get_string(t, "mode", at)) {
    try {
      s.mode = parse_mode(*v);
    } catch (const std::invalid_argument& e) {
      fail("sample.mode", e.what());
    }
  }
  if (auto v = get_int(t, "r_hat", at)) s.alg.r_hat = *v;
  if (auto v = get_int(t, "c1", at)) s.alg.c1 = *v;
  if (auto v = get_int(t, "c2", at)) s.alg.c2 = *v;
  if (auto v = get_int(t, "tau", at)) s.alg.tau = static_cast<int>(*v);
  if (auto v = get_int(t, "k_max", at)) s.alg.k_max = static_cast<int>(*v);
  if (auto v = get_int(t, "row_count", at)) s.alg.row_count = *v;
  if (auto v = get_index_array(t, "initial_columns", at)) s.alg.initial_column_list = *v;
  if (auto v = get_int(t, "j_max", at)) s.j_max = static_cast<int>(*v);
  if (auto v = get_bool(t, "write_residual", at)) s.write_residual = *v;
}

void parse_eval(const toml::table& t, EvalConfig& e) {
  constexpr std::string_view at = "eval";
  check_keys(t, at, {"curve_grid", "curve_trials"});
  if (auto v = get_index_array(t, "curve_grid", at)) e.curve_grid = *v;
  if (auto v = get_int(t, "curve_trials", at)) e.curve_trials = static_cast<int>(*v);
}

std::string toml_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string toml_string(std::string_view v) {
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string toml_indices(const IndexList& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

void dump_groups(std::ostringstream& os, std::string_view key,
                 const std::vector<ClusterGroup>& groups) {
  if (groups.empty()) return;
  os << key << " = [\n";
  for (const ClusterGroup& g : groups)
    os << "  { count = " << g.count << ", size = " << g.size << ", rank = " << g.rank
       << ", amplitude = " << toml_double(g.amplitude) << " },\n";
  os << "]\n";
}

}  // namespace

SampleMode parse_mode(std::string_view name) {
  if (name == "direct") return SampleMode::kDirect;
  if (name == "sketched") return SampleMode::kSketched;
  if (name == "alg1") return SampleMode::kAlg1;
  if (name == "alg2") return SampleMode::kAlg2;
  if (name == "outlier-robust") return SampleMode::kOutlierRobust;
  throw std::invalid_argument("unknown sample mode '" + std::string(name) +
                              "' (expected direct, sketched, alg1, alg2 or outlier-robust)");
}

const char* mode_name(SampleMode mode) {
  switch (mode) {
    case SampleMode::kDirect: return "direct";
    case SampleMode::kSketched: return "sketched";
    case SampleMode::kAlg1: return "alg1";
    case SampleMode::kAlg2: return "alg2";
    case SampleMode::kOutlierRobust: return "outlier-robust";
  }
  return "direct";
}

ExperimentConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML parse error at line " << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }
  check_keys(root, "config",
             {"experiment", "seed", "scene", "solver", "sample", "eval", "sweep_outliers"});
  ExperimentConfig cfg;
  if (auto v = get_string(root, "experiment", "")) cfg.experiment = *v;
  if (auto v = get_int(root, "seed", "")) {
    if (*v < 0) fail("seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(*v);
  }
  if (const toml::table* t = get_table(root, "scene")) parse_scene(*t, base_dir, cfg.scene);
  if (const toml::table* t = get_table(root, "solver")) parse_solver(*t, cfg.solver());
  if (const toml::table* t = get_table(root, "sample")) parse_sample(*t, cfg.sample);
  if (const toml::table* t = get_table(root, "eval")) parse_eval(*t, cfg.eval);
  if (auto v = get_index_array(root, "sweep_outliers", "")) cfg.sweep_outliers = *v;
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

std::string dump_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "experiment = " << toml_string(cfg.experiment) << "\n";
  os << "seed = " << cfg.seed << "\n";
  if (!cfg.sweep_outliers.empty()) os << "sweep_outliers = " << toml_indices(cfg.sweep_outliers) << "\n";

  const SceneConfig& s = cfg.scene;
  os << "\n[scene]\n";
  if (!s.generated()) {
    os << "input = " << toml_string(s.input) << "\n";
  } else {
    os << "rows = " << s.rows << "\n";
    dump_groups(os, "clusters", s.clusters);
    dump_groups(os, "row_clusters", s.row_clusters);
    os << "rho = " << toml_double(s.rho) << "\n";
    os << "sparse = " << (s.sparse_kind == MagnitudeDist::Kind::kGaussian ? "\"gaussian\"" : "\"uniform\"")
       << "\n";
    os << "sparse_scale = " << toml_double(s.sparse_scale) << "\n";
    os << "outliers = " << s.outliers << "\n";
    if (!s.outlier_indices.empty())
      os << "outlier_indices = " << toml_indices(s.outlier_indices) << "\n";
    os << "append_outliers = " << (s.append_outliers ? "true" : "false") << "\n";
  }
  os << "format = " << toml_string(s.format == MatrixFormat::kCsv ? "csv" : "bin") << "\n";

  const SolverConfig& v = cfg.solver();
  os << "\n[solver]\n";
  if (v.gamma) os << "gamma = " << toml_double(*v.gamma) << "\n";
  if (v.gamma_rel) os << "gamma_rel = " << toml_double(*v.gamma_rel) << "\n";
  os << "lambda = " << toml_double(v.lambda) << "\n";
  if (v.mu) os << "mu = " << toml_double(*v.mu) << "\n";
  os << "mu_scale = " << toml_double(v.mu_scale) << "\n";
  os << "max_iters = " << v.max_iters << "\n";
  os << "tol = " << toml_double(v.tol) << "\n";
  os << "zero_row_eps = " << toml_double(v.zero_row_eps) << "\n";
  os << "selection_threshold = " << toml_double(v.selection_threshold) << "\n";

  const SampleConfig& m = cfg.sample;
  os << "\n[sample]\n";
  os << "mode = " << toml_string(mode_name(m.mode)) << "\n";
  os << "r_hat = " << m.alg.r_hat << "\n";
  os << "c1 = " << m.alg.c1 << "\n";
  os << "c2 = " << m.alg.c2 << "\n";
  os << "tau = " << m.alg.tau << "\n";
  os << "k_max = " << m.alg.k_max << "\n";
  if (m.alg.row_count) os << "row_count = " << *m.alg.row_count << "\n";
  if (m.alg.initial_column_list)
    os << "initial_columns = " << toml_indices(*m.alg.initial_column_list) << "\n";
  os << "j_max = " << m.j_max << "\n";
  os << "write_residual = " << (m.write_residual ? "true" : "false") << "\n";

  if (!cfg.eval.curve_grid.empty() || cfg.eval.curve_trials != 0) {
    os << "\n[eval]\n";
    os << "curve_grid = " << toml_indices(cfg.eval.curve_grid) << "\n";
    os << "curve_trials = " << cfg.eval.curve_trials << "\n";
  }
  return os.str();
}

void validate(const ExperimentConfig& cfg) {
  if (std::find(std::begin(kExperiments), std::end(kExperiments), cfg.experiment) ==
      std::end(kExperiments))
    fail("experiment", "unknown experiment id '" + cfg.experiment + "'");

  const SceneConfig& s = cfg.scene;
  if (s.generated()) {
    if (s.rows < 1) fail("scene.rows", "must be positive");
    if (s.clusters.empty()) fail("scene.clusters", "at least one cluster group is required");
    Index col_rank = 0;
    for (const ClusterGroup& g : s.clusters) {
      if (g.count < 1 || g.size < 1 || g.rank < 1)
        fail("scene.clusters", "count, size and rank must be positive");
      if (!(g.amplitude >= 0.0)) fail("scene.clusters", "amplitude must be non-negative");
      col_rank += g.count * g.rank;
    }
    if (!s.row_clusters.empty()) {
      Index rows = 0, row_rank = 0;
      for (const ClusterGroup& g : s.row_clusters) {
        if (g.count < 1 || g.size < 1 || g.rank < 1)
          fail("scene.row_clusters", "count, size and rank must be positive");
        if (!(g.amplitude >= 0.0)) fail("scene.row_clusters", "amplitude must be non-negative");
        rows += g.count * g.size;
        row_rank += g.count * g.rank;
      }
      if (rows != s.rows) fail("scene.row_clusters", "sizes must add up to scene.rows");
      if (row_rank != col_rank)
        fail("scene.row_clusters", "total rank must match the column clusters");
    }
    if (!(s.rho >= 0.0 && s.rho < 1.0)) fail("scene.rho", "must lie in [0, 1)");
    if (!(s.sparse_scale >= 0.0)) fail("scene.sparse_scale", "must be non-negative");
    if (s.outliers < 0) fail("scene.outliers", "must be non-negative");
    if (!s.outlier_indices.empty()) {
      if (static_cast<Index>(s.outlier_indices.size()) != s.outliers)
        fail("scene.outlier_indices", "length must equal scene.outliers");
      if (s.append_outliers)
        fail("scene.outlier_indices", "explicit positions cannot be combined with append_outliers");
    }
  }
  try {
    cfg.solver().validate();
  } catch (const std::invalid_argument& e) {
    fail("solver", e.what());
  }
  const Alg1Config& a = cfg.sample.alg;
  if (a.r_hat < 1) fail("sample.r_hat", "must be positive");
  if (a.c1 < 1 || a.c2 < 1) fail("sample", "c1 and c2 must be positive");
  if (a.tau < 1 || a.tau > 49) fail("sample.tau", "must lie in [1, 49]");
  if (a.k_max < 1) fail("sample.k_max", "must be positive");
  if (a.row_count && *a.row_count < 1) fail("sample.row_count", "must be positive");
  if (cfg.sample.j_max < 1) fail("sample.j_max", "must be positive");
  if (cfg.eval.curve_trials < 0) fail("eval.curve_trials", "must be non-negative");
  for (Index m : cfg.eval.curve_grid)
    if (m < 1) fail("eval.curve_grid", "entries must be positive");
  if (!cfg.eval.curve_grid.empty() && cfg.eval.curve_trials == 0)
    fail("eval.curve_trials", "must be positive when a curve grid is given");
  for (Index n : cfg.sweep_outliers)
    if (n < 0) fail("sweep_outliers", "entries must be non-negative");
}

}  // namespace colpursuit::cli
