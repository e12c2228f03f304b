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

#ifndef COLPURSUIT_MATRIX_IO_HPP_
#define COLPURSUIT_MATRIX_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "colpursuit/types.hpp"

namespace colpursuit {

// csv: comma-separated, one row per line, '.' decimal point, no header.
// binary: two little-endian uint64 dims (rows, cols) then rows*cols
// little-endian float64 values in row-major order.
enum class MatrixFormat { kCsv, kBinary };

MatrixFormat parse_format(std::string_view name);
// Picks kBinary for ".bin", kCsv otherwise.
MatrixFormat format_for_path(const std::filesystem::path& path);
const char* extension_for(MatrixFormat format);

// Throws ParseError on malformed content and std::runtime_error when the
// file cannot be opened.
Matrix load_matrix(const std::filesystem::path& path, MatrixFormat format);
void save_matrix(const std::filesystem::path& path, const Matrix& m,
                 MatrixFormat format);

// CSV text with shortest round-trip formatting of each value.
std::string to_csv(const Matrix& m);
Matrix parse_csv(std::string_view text);

// In-memory forms of the file formats.
std::string serialize_matrix(const Matrix& m, MatrixFormat format);
Matrix parse_binary(std::string_view bytes);

}  // namespace colpursuit

#endif  // COLPURSUIT_MATRIX_IO_HPP_
