//
// Copyright 2026 The mvgdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "error.hpp"

namespace mvgdp {
namespace {

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      return fields;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

double ParseCell(std::string_view cell, std::size_t line, std::size_t column) {
  double value = 0.0;
  // from_chars does not accept a leading '+'.
  std::string_view digits = cell;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() ||
      ptr != digits.data() + digits.size()) {
    std::ostringstream msg;
    msg << "non-numeric cell '" << cell << "' at line " << line << ", column "
        << column;
    Fail(ErrorCode::kFormat, msg.str());
  }
  return value;
}

}  // namespace

CsvTable ParseCsv(std::string_view text, bool has_header) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::size_t line_number = 0;
  bool header_pending = has_header;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;
    if (line.empty()) continue;

    const std::vector<std::string_view> fields = SplitFields(line);
    if (header_pending) {
      for (std::string_view f : fields) table.names.emplace_back(f);
      width = fields.size();
      header_pending = false;
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      std::ostringstream msg;
      msg << "line " << line_number << " has " << fields.size()
          << " fields, expected " << width;
      Fail(ErrorCode::kFormat, msg.str());
    }
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      row.push_back(ParseCell(fields[c], line_number, c + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) Fail(ErrorCode::kFormat, "CSV input has no data rows");

  table.records.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      table.records(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return table;
}

CsvTable ReadCsvFile(const std::string& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseCsv(buffer.str(), has_header);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

CsvMatrix LoadCsvMatrix(const std::string& path, bool has_header) {
  CsvTable table = ReadCsvFile(path, has_header);
  return CsvMatrix{table.records.transpose(), std::move(table.names)};
}

std::string FormatCsv(const Eigen::MatrixXd& matrix,
                      std::span<const std::string> header) {
  std::string out;
  if (!header.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
  }
  char buf[32];
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c) out += ',';
      const auto result = std::to_chars(buf, buf + sizeof(buf), matrix(r, c));
      out.append(buf, result.ptr);
    }
    out += '\n';
  }
  return out;
}

void WriteCsvFile(const std::string& path, const Eigen::MatrixXd& matrix,
                  std::span<const std::string> header) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << FormatCsv(matrix, header);
  if (!out) Fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace mvgdp
