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


#ifndef COLPURSUIT_CLI_OUTPUT_HPP_
#define COLPURSUIT_CLI_OUTPUT_HPP_

#include <filesystem>
#include <map>
#include <string>

namespace colpursuit::cli {

// Files produced by a command, held in memory until commit. Names are
// relative paths with '/' separators.
class OutputSet {
 public:
  void add(const std::string& name, std::string bytes);
  bool contains(const std::string& name) const { return files_.count(name) != 0; }
  const std::string& at(const std::string& name) const { return files_.at(name); }
  const std::map<std::string, std::string>& files() const { return files_; }

  // Writes every file under `dir`, creating it if needed. On failure nothing
  // is left behind: staged files and directories created here are removed
  // and std::runtime_error is thrown.
  void commit(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> files_;
};

}  // namespace colpursuit::cli

#endif  // COLPURSUIT_CLI_OUTPUT_HPP_
