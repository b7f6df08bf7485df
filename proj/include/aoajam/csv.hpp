// SPDX-License-Identifier: Apache-2.0
//
// aoajam - AoA estimation under adversarial jamming in Rician fading
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

#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aoajam {

// Column-oriented numeric table. Values are written at full double precision
// ('%.17g', '.' decimal separator) so they re-parse to the exact in-memory
// doubles.
struct OutputTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row) {
        if (row.size() != header.size())
            throw std::invalid_argument("OutputTable: row width differs from header");
        rows.push_back(std::move(row));
    }

    void write(std::ostream& out) const {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c) out << ',';
            out << header[c];
        }
        out << '\n';
        char buf[64];
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << ',';
                std::snprintf(buf, sizeof(buf), "%.17g", row[c]);
                out << buf;
            }
            out << '\n';
        }
    }

    void write_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
        write(out);
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + path + "'");
    }
};

} // namespace aoajam
