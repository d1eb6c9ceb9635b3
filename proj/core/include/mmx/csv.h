// Copyright 2026 The mmx Authors.
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

#ifndef MMX_CSV_H_
#define MMX_CSV_H_

#include <optional>
#include <string>
#include <vector>

namespace mmx {

// Shortest round-trippable decimal ("%.17g"); "inf"/"-inf"/"nan" otherwise.
std::string FormatReal(double v);
// Empty string for nullopt.
std::string FormatReal(const std::optional<double>& v);

std::optional<double> ParseOptionalReal(const std::string& cell);

using CsvTable = std::vector<std::vector<std::string>>;

// Minimal reader for the files this library writes: comma-separated, no
// quoting. The header row is returned as row 0.
CsvTable ReadCsvFile(const std::string& path);
std::vector<std::string> SplitCsvLine(const std::string& line);

// Index of `name` in a header row; throws Error if absent.
std::size_t ColumnIndex(const std::vector<std::string>& header,
                        const std::string& name);

}  // namespace mmx

#endif  // MMX_CSV_H_
