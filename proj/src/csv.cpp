// Copyright 2026 The pevclock Authors
//
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

#include "pevclock/csv.hpp"

#include <cstdio>

namespace pevclock {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string format_long(long value) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%ld", value);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) {
    throw Error("CsvWriter: cannot open '" + path + "' for writing");
  }
}

void CsvWriter::write_header(const std::vector<std::string>& columns) {
  write_row(columns);
  --rows_;  // headers are not data rows
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) {
    throw Error("CsvWriter: write failed on '" + path_ + "'");
  }
  ++rows_;
}

}  // namespace pevclock
