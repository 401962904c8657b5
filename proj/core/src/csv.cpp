// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "liftlab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace liftlab {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_number(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !cell.empty();
}

bool all_numeric(const std::vector<std::string>& cells) {
  double v;
  for (const auto& c : cells) {
    if (!parse_number(c, v)) return false;
  }
  return !cells.empty();
}

}  // namespace

JointDistribution joint_from_csv_text(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (trim(line).empty()) continue;
    lines.push_back(split_line(line));
  }
  if (lines.empty()) {
    throw Error(ErrorCode::kParseError, "joint CSV is empty");
  }

  // Header row and label column are optional; a cell that does not parse as
  // a number marks them.
  bool has_header = !all_numeric(lines[0]);
  std::size_t first_data = has_header ? 1 : 0;
  if (first_data >= lines.size()) {
    throw Error(ErrorCode::kParseError, "joint CSV has no data rows");
  }
  bool has_row_labels = false;
  {
    double v;
    for (std::size_t i = first_data; i < lines.size(); ++i) {
      if (lines[i].empty() || !parse_number(lines[i][0], v)) {
        has_row_labels = true;
        break;
      }
    }
  }

  const std::size_t rows = lines.size() - first_data;
  const std::size_t offset = has_row_labels ? 1 : 0;
  if (lines[first_data].size() <= offset) {
    throw Error(ErrorCode::kParseError, "joint CSV has no data columns");
  }
  const std::size_t cols = lines[first_data].size() - offset;

  std::vector<std::string> col_labels;
  if (has_header) {
    const auto& header = lines[0];
    // The header may or may not carry a corner cell for the label column.
    std::size_t start = 0;
    if (header.size() == cols + 1) {
      start = 1;
    } else if (header.size() != cols) {
      throw Error(ErrorCode::kParseError,
                  "header has " + std::to_string(header.size()) +
                      " cells for " + std::to_string(cols) + " columns");
    }
    col_labels.assign(header.begin() + start, header.end());
  } else {
    col_labels = default_labels("x", cols);
  }

  std::vector<std::string> row_labels;
  Mat table(rows, cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& cells = lines[first_data + r];
    if (cells.size() != cols + offset) {
      throw Error(ErrorCode::kParseError,
                  "row " + std::to_string(r + 1) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(cols + offset));
    }
    if (has_row_labels) row_labels.push_back(cells[0]);
    for (std::size_t c = 0; c < cols; ++c) {
      double v;
      if (!parse_number(cells[c + offset], v)) {
        throw Error(ErrorCode::kParseError,
                    "cell '" + cells[c + offset] + "' is not a number");
      }
      table(r, c) = v;
    }
  }
  if (!has_row_labels) row_labels = default_labels("s", rows);

  return JointDistribution::validate(std::move(table), std::move(row_labels),
                                     std::move(col_labels));
}

JointDistribution joint_from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return joint_from_csv_text(buf.str());
}

void joint_to_csv(const JointDistribution& joint, std::ostream& out) {
  out << "";
  for (const auto& label : joint.col_labels()) out << ',' << label;
  out << '\n';
  for (std::size_t r = 0; r < joint.num_rows(); ++r) {
    out << joint.row_labels()[r];
    for (std::size_t c = 0; c < joint.num_cols(); ++c) {
      out << ',' << format_double(joint(r, c));
    }
    out << '\n';
  }
}

void joint_to_csv_file(const JointDistribution& joint,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path);
  }
  joint_to_csv(joint, out);
}

void channel_to_csv(const Channel& channel, std::ostream& out) {
  out << "";
  for (const auto& label : channel.out_labels()) out << ',' << label;
  out << '\n';
  for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
    out << channel.in_labels()[x];
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      out << ',' << format_double(channel(x, y));
    }
    out << '\n';
  }
}

void channel_to_csv_file(const Channel& channel, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path);
  }
  channel_to_csv(channel, out);
}

}  // namespace liftlab
