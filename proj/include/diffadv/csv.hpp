// SPDX-License-Identifier: Apache-2.0
//
// diffadv: channel modelling and link simulation for diffusion-advection particle communication
// Copyright (C) 2026 The diffadv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace diffadv {

/// Comment lines (leading '#', stripped), a header row and string cells.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a named column; throws if absent.
    std::size_t column(const std::string &name) const;
    double number(std::size_t row, const std::string &name) const;
};

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void comment(const std::string &line);
    CsvWriter &cell(const std::string &s);
    CsvWriter &cell(double v);
    CsvWriter &cell(std::size_t v);
    void end_row();

    std::string str() const;
    /// Writes to a temporary sibling and renames it into place.
    void write(const std::string &path) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::string> current_;
};

/// Atomically replaces `path` with `content`.
void write_file_atomic(const std::string &path, const std::string &content);

CsvTable parse_csv(const std::string &text);
CsvTable read_csv(const std::string &path);

} // namespace diffadv
