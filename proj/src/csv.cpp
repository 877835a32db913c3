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

#include "diffadv/csv.hpp"

#include "diffadv/common.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace diffadv {

std::size_t CsvTable::column(const std::string &name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ValidationError("no column named '" + name + "'", "csv");
}

double CsvTable::number(std::size_t row, const std::string &name) const {
    const std::string &s = rows.at(row).at(column(name));
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ValidationError("cell '" + s + "' is not a number", name);
    return v;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::comment(const std::string &line) { comments_.push_back(line); }

CsvWriter &CsvWriter::cell(const std::string &s) {
    current_.push_back(s);
    return *this;
}

CsvWriter &CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter &CsvWriter::cell(std::size_t v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
    if (current_.size() != header_.size())
        throw Error("csv row has " + std::to_string(current_.size()) + " cells, header has " +
                    std::to_string(header_.size()));
    rows_.push_back(std::move(current_));
    current_.clear();
}

std::string CsvWriter::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    for (const auto &c : comments_) out += "# " + c + "\n";
    line(header_);
    for (const auto &r : rows_) line(r);
    return out;
}

void CsvWriter::write(const std::string &path) const { write_file_atomic(path, str()); }

void write_file_atomic(const std::string &path, const std::string &content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp + "' for writing");
        out << content;
        out.flush();
        if (!out) throw Error("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cannot move '" + tmp + "' to '" + path + "'");
    }
}

CsvTable parse_csv(const std::string &text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    auto split = [](const std::string &s) {
        std::vector<std::string> cells;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        cells.push_back(cur);
        return cells;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '#') {
            t.comments.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
            continue;
        }
        if (line.empty()) continue;
        if (!have_header) {
            t.header = split(line);
            have_header = true;
            continue;
        }
        auto cells = split(line);
        if (cells.size() != t.header.size())
            throw ValidationError("row " + std::to_string(t.rows.size() + 1) + " has " + std::to_string(cells.size()) +
                                      " cells, expected " + std::to_string(t.header.size()),
                                  "csv");
        t.rows.push_back(std::move(cells));
    }
    if (!have_header) throw ValidationError("missing header row", "csv");
    return t;
}

CsvTable read_csv(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

} // namespace diffadv
