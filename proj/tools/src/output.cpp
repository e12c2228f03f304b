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


#include "colpursuit_cli/output.hpp"

#include <fstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace colpursuit::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Outermost ancestor of `dir` (or `dir` itself) that does not exist yet.
fs::path first_missing(const fs::path& dir) {
  fs::path missing;
  std::error_code ec;
  for (fs::path p = dir; !p.empty(); p = p.parent_path()) {
    if (fs::exists(p, ec)) break;
    missing = p;
    if (p == p.parent_path()) break;
  }
  return missing;
}

}  // namespace

void OutputSet::add(const std::string& name, std::string bytes) {
  if (name.empty() || name.front() == '/' || name.find("..") != std::string::npos)
    throw std::invalid_argument("invalid output name '" + name + "'");
  files_[name] = std::move(bytes);
}

void OutputSet::commit(const fs::path& dir) const {
  if (dir.empty()) throw std::runtime_error("no output directory given");
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec))
    throw std::runtime_error(dir.string() + " exists and is not a directory");

  const fs::path created = first_missing(fs::absolute(dir));
  const fs::path staging = dir / ".colpursuit-staging";
  std::vector<fs::path> moved;
  try {
    fs::create_directories(dir);
    fs::remove_all(staging);
    for (const auto& [name, bytes] : files_) write_file(staging / name, bytes);
    for (const auto& [name, bytes] : files_) {
      (void)bytes;
      const fs::path target = dir / name;
      fs::create_directories(target.parent_path());
      fs::rename(staging / name, target);
      moved.push_back(target);
    }
    fs::remove_all(staging);
  } catch (const std::exception& e) {
    fs::remove_all(staging, ec);
    for (const fs::path& p : moved) fs::remove(p, ec);
    if (!created.empty()) fs::remove_all(created, ec);
    throw std::runtime_error(std::string("cannot write outputs to ") + dir.string() + ": " + e.what());
  }
}

}  // namespace colpursuit::cli
