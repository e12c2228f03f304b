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

#include "colpursuit/matrix_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace colpursuit {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary matrix format assumes a little-endian host");

std::string read_file(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

MatrixFormat parse_format(std::string_view name) {
  if (name == "csv") return MatrixFormat::kCsv;
  if (name == "bin" || name == "binary" || name == "raw-binary-f64")
    return MatrixFormat::kBinary;
  throw std::invalid_argument("unknown matrix format: " + std::string(name));
}

MatrixFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? MatrixFormat::kBinary : MatrixFormat::kCsv;
}

const char* extension_for(MatrixFormat format) {
  return format == MatrixFormat::kBinary ? ".bin" : ".csv";
}

std::string to_csv(const Matrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 20);
  char buf[64];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out.push_back(',');
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), m(i, j));
      out.append(buf, end);
    }
    out.push_back('\n');
  }
  return out;
}

Matrix parse_csv(std::string_view text) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    Index count = 0;
    while (true) {
      const auto comma = line.find(',');
      std::string_view field = trim(line.substr(0, comma));
      double v = 0.0;
      if (!field.empty() && field.front() == '+') field.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" +
                         std::string(field) + "'");
      if (!std::isfinite(v))
        throw ParseError("line " + std::to_string(line_no) + ": non-finite value");
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (cols < 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " fields, found " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("empty matrix file");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  return m;
}

Matrix parse_binary(std::string_view bytes) {
  if (bytes.size() < 16) throw ParseError("truncated header");
  std::uint64_t dims[2];
  std::memcpy(dims, bytes.data(), 16);
  const std::uint64_t rows = dims[0];
  const std::uint64_t cols = dims[1];
  if (rows != 0 && cols > (bytes.size() - 16) / 8 / rows)
    throw ParseError("payload shorter than declared shape");
  if (bytes.size() != 16 + rows * cols * 8) throw ParseError("payload size does not match shape");
  if (rows == 0 || cols == 0) throw ParseError("empty matrix file");
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  const char* p = bytes.data() + 16;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      double v;
      std::memcpy(&v, p, 8);
      p += 8;
      if (!std::isfinite(v)) throw ParseError("non-finite value");
      m(i, j) = v;
    }
  }
  return m;
}

std::string serialize_matrix(const Matrix& m, MatrixFormat format) {
  if (format == MatrixFormat::kCsv) return to_csv(m);
  std::string out(16 + static_cast<std::size_t>(m.size()) * 8, '\0');
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(m.rows()),
                                 static_cast<std::uint64_t>(m.cols())};
  std::memcpy(out.data(), dims, sizeof(dims));
  char* p = out.data() + 16;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      std::memcpy(p, &v, 8);
      p += 8;
    }
  }
  return out;
}

Matrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  const std::string bytes = read_file(path, format == MatrixFormat::kBinary);
  try {
    return format == MatrixFormat::kCsv ? parse_csv(bytes) : parse_binary(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_matrix(const std::filesystem::path& path, const Matrix& m,
                 MatrixFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::string bytes = serialize_matrix(m, format);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace colpursuit
