// SPDX-License-Identifier: Apache-2.0
//
// simsec - secure MIMO links with artificial noise and quantized feedback
// Copyright (C) 2026 The simsec authors
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

#include "simsec/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

namespace simsec {

namespace {

std::string fmt9(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

template <class T>
T parse_number(const std::string &field, std::size_t line_no)
{
    try
    {
        std::size_t used = 0;
        T v;
        if constexpr (std::is_floating_point_v<T>)
            v = std::stod(field, &used);
        else
            v = static_cast<T>(std::stoll(field, &used));
        if (used != field.size())
            throw std::invalid_argument(field);
        return v;
    }
    catch (const std::exception &)
    {
        throw Error(ErrorKind::config,
                    "csv line " + std::to_string(line_no) + ": cannot parse '" + field + "'");
    }
}

} // namespace

std::string format_csv(const ExperimentResult &result)
{
    std::vector<const ResultRow *> rows;
    for (const auto &r : result.rows)
        rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow *a, const ResultRow *b) {
        return std::tuple(a->antennas.n_r, a->snr_db, a->antennas.n_t, a->antennas.n_j, a->antennas.n_e, a->nf_bits) <
               std::tuple(b->antennas.n_r, b->snr_db, b->antennas.n_t, b->antennas.n_j, b->antennas.n_e, b->nf_bits);
    });

    std::ostringstream os;
    os << csv_header << '\n';
    for (const auto *r : rows)
    {
        os << to_string(r->scenario) << ',' << r->antennas.n_t << ',' << r->antennas.n_r << ','
           << r->antennas.n_j << ',' << r->antennas.n_e << ',' << fmt9(r->snr_db) << ',' << r->nf_bits << ','
           << fmt9(r->r_perfect_mean) << ',' << fmt9(r->r_quantized_mean) << ',' << fmt9(r->gap_mean) << ','
           << fmt9(r->leakage_mean) << ',' << r->trials << '\n';
    }
    return os.str();
}

void write_csv(const ExperimentResult &result, const std::string &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
    out << format_csv(result);
    out.flush();
    if (!out)
        throw Error(ErrorKind::io, "write to '" + path + "' failed");
}

std::vector<ResultRow> parse_csv(const std::string &text)
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != csv_header)
        throw Error(ErrorKind::config, "csv: missing or unexpected header");

    std::vector<ResultRow> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = split(line);
        if (f.size() != 12)
            throw Error(ErrorKind::config, "csv line " + std::to_string(line_no) + ": expected 12 fields");
        ResultRow r;
        r.scenario = parse_scenario(f[0]);
        r.antennas.n_t = parse_number<int>(f[1], line_no);
        r.antennas.n_r = parse_number<int>(f[2], line_no);
        r.antennas.n_j = parse_number<int>(f[3], line_no);
        r.antennas.n_e = parse_number<int>(f[4], line_no);
        r.snr_db = parse_number<double>(f[5], line_no);
        r.nf_bits = parse_number<std::int64_t>(f[6], line_no);
        r.r_perfect_mean = parse_number<double>(f[7], line_no);
        r.r_quantized_mean = parse_number<double>(f[8], line_no);
        r.gap_mean = parse_number<double>(f[9], line_no);
        r.leakage_mean = parse_number<double>(f[10], line_no);
        r.trials = parse_number<int>(f[11], line_no);
        rows.push_back(r);
    }
    return rows;
}

std::vector<ResultRow> read_csv(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_csv(os.str());
}

} // namespace simsec
