/*
   Copyright 2026 The fpclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>
#include <vector>

namespace fpclab::app {

inline constexpr int kCsvSchemaVersion = 1;

/// RFC-4180 quoting: fields containing a comma, quote, CR or LF are quoted
/// and embedded quotes doubled.
std::string csv_field(const std::string& text);

/// %.12g with '.' as decimal separator; empty for NaN.
std::string csv_number(double value);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    /// Raw cell text, quoted on render; short rows are padded with empty cells.
    void add_row(std::vector<std::string> cells);
    std::size_t size() const { return rows_.size(); }

    /// Two comment lines (schema version, resolved config), the header row,
    /// then the data rows; lines end in CRLF.
    std::string render(const std::string& config_json) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes bytes to path, creating parent directories. Throws IoError.
void write_file(const std::string& path, const std::string& content);

}  // namespace fpclab::app
