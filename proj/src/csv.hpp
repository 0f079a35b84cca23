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

#ifndef MVGDP_CSV_HPP_
#define MVGDP_CSV_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mvgdp {

// A numeric CSV grid. `records` keeps the file's orientation: one row per
// line of the file.
struct CsvTable {
  Eigen::MatrixXd records;
  std::vector<std::string> names;
};

// Parses comma-separated numbers with a '.' decimal separator regardless of
// the process locale. Blank lines are skipped. Throws kFormat on an empty
// grid, ragged rows (with the line number) or a non-numeric cell (with line
// and column).
CsvTable ParseCsv(std::string_view text, bool has_header);

CsvTable ReadCsvFile(const std::string& path, bool has_header);

// Dataset loader: rows of the file are records, and the result is transposed
// so that columns are samples, i.e. an M x N matrix with M = columns in the
// file and N = data rows.
struct CsvMatrix {
  Eigen::MatrixXd data;
  std::vector<std::string> names;
};
CsvMatrix LoadCsvMatrix(const std::string& path, bool has_header);

// Shortest round-trip decimal form, independent of the process locale.
std::string FormatCsv(const Eigen::MatrixXd& matrix,
                      std::span<const std::string> header = {});

void WriteCsvFile(const std::string& path, const Eigen::MatrixXd& matrix,
                  std::span<const std::string> header = {});

}  // namespace mvgdp

#endif  // MVGDP_CSV_HPP_
