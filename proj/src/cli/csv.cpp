// SPDX-License-Identifier: Apache-2.0
//
// frab-noma: NOMA downlink simulation with finite-resolution analog beamforming
// Copyright (C) 2026 The frab-noma authors
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

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "frabnoma/cli.hpp"
#include "frabnoma/error.hpp"

namespace frabnoma::cli
{

void write_csv(const OutageCurve &curve, std::ostream &out)
{
    out << kCsvHeader << '\n';
    for (std::size_t i = 0; i < curve.tx_dbm.size(); ++i)
    {
        for (const Series &s : curve.series)
        {
            out << format_number(curve.tx_dbm[i]) << ',' << format_number(curve.rho[i]) << ',' << s.name << ','
                << format_number(s.values[i].mean) << ',' << format_number(s.values[i].ci95_half) << ','
                << to_string(s.provenance) << ',' << s.n_trials << '\n';
        }
    }
}

namespace
{
std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true)
    {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos)
            return fields;
        start = comma + 1;
    }
}

template <typename T>
T field_value(std::string_view text, std::size_t line_no)
{
    T value{};
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw InputError("CSV line " + std::to_string(line_no) + ": malformed number '" + std::string(text) + "'");
    return value;
}
} // namespace

std::vector<CsvRow> read_csv(std::istream &in)
{
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw InputError("CSV is empty");
    ++line_no;
    if (line != kCsvHeader)
        throw InputError("CSV line 1: unexpected header");
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = split_fields(line);
        if (f.size() != 7)
            throw InputError("CSV line " + std::to_string(line_no) + ": expected 7 fields");
        rows.push_back({field_value<double>(f[0], line_no), field_value<double>(f[1], line_no), std::string(f[2]),
                        field_value<double>(f[3], line_no), field_value<double>(f[4], line_no), std::string(f[5]),
                        field_value<std::size_t>(f[6], line_no)});
    }
    return rows;
}

} // namespace frabnoma::cli
