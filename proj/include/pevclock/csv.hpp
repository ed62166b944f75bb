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

// Minimal deterministic CSV emission: fixed "%.12g" float formatting,
// '\n' line endings, no locale involvement. Identical inputs produce
// byte-identical files on every platform this builds on.

#ifndef PEVCLOCK_CSV_HPP_
#define PEVCLOCK_CSV_HPP_

#include <fstream>
#include <string>
#include <vector>

#include "pevclock/errors.hpp"

namespace pevclock {

// Shortest round-trippable-ish decimal rendering used for all CSV floats.
std::string format_double(double value);
std::string format_long(long value);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void write_header(const std::vector<std::string>& columns);
  void write_row(const std::vector<std::string>& cells);

  long rows_written() const { return rows_; }
  const std::string& path() const { return path_; }

 private:
  std::ofstream out_;
  std::string path_;
  long rows_ = 0;
};

}  // namespace pevclock

#endif  // PEVCLOCK_CSV_HPP_
