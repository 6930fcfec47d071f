// Copyright 2026 The qtomo Authors
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

#ifndef QTOMO_IO_HPP
#define QTOMO_IO_HPP

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <system_error>

#include "json.hpp"
#include "qtomo/error.hpp"
#include "qtomo/linalg.hpp"
#include "qtomo/report.hpp"

namespace qtomo {

using nlohmann::json;

/// {"n": int, "re": [[...]], "im": [[...]]}; "im" may be omitted.
inline json matrix_to_json(const ComplexMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix matrix_from_json(const json &doc) {
    auto fail = [](const std::string &why) { return Error(ErrorCode::Io, "matrix JSON: " + why); };
    if (!doc.is_object()) throw fail("top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw fail("missing integer field 'n'");
    const long long n = doc["n"].get<long long>();
    if (n < 1) throw fail("'n' must be >= 1");
    auto read_part = [&](const char *key, bool required) -> RealMatrix {
        RealMatrix part = RealMatrix::Zero(n, n);
        if (!doc.contains(key)) {
            if (required) throw fail(std::string("missing field '") + key + "'");
            return part;
        }
        const json &rows = doc[key];
        if (!rows.is_array() || static_cast<long long>(rows.size()) != n) {
            throw fail(std::string("'") + key + "' must have n rows");
        }
        for (long long i = 0; i < n; ++i) {
            const json &row = rows[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<long long>(row.size()) != n) {
                throw fail(std::string("'") + key + "' row " + std::to_string(i) + " must have n entries");
            }
            for (long long j = 0; j < n; ++j) {
                const json &v = row[static_cast<std::size_t>(j)];
                if (!v.is_number()) throw fail(std::string("'") + key + "' entries must be numbers");
                part(i, j) = v.get<double>();
            }
        }
        return part;
    };
    RealMatrix re = read_part("re", true);
    RealMatrix im = read_part("im", false);
    ComplexMatrix m(n, n);
    m.real() = re;
    m.imag() = im;
    return m;
}

inline ComplexMatrix read_matrix_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::Io, "'" + path + "' is not valid JSON: " + e.what());
    }
    return matrix_from_json(doc);
}

inline json extra_value_to_json(const ExtraValue &v) {
    return std::visit([](const auto &x) { return json(x); }, v);
}

inline json report_to_json(const InequalityReport &r) {
    json extra = json::object();
    for (const auto &[key, value] : r.extra) extra[key] = extra_value_to_json(value);
    if (r.trial) extra["trial"] = *r.trial;
    if (r.counterexample) {
        json ce{{"rho", matrix_to_json(r.counterexample->rho)}};
        if (r.counterexample->unitary) ce["unitary"] = matrix_to_json(*r.counterexample->unitary);
        extra["counterexample"] = std::move(ce);
    }
    json out;
    out["inequality"] = std::string(inequality_name(r.id));
    out["q"] = r.q ? json(*r.q) : json(nullptr);
    out["N"] = r.n;
    out["shape"] = r.shape;
    out["lhs"] = r.lhs;
    out["rhs"] = r.rhs;
    out["slack"] = r.slack;
    out["holds"] = r.holds;
    out["tolerance"] = r.tolerance;
    out["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    out["extra"] = std::move(extra);
    return out;
}

/// Shortest decimal that round-trips.
inline std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, end);
}

inline constexpr const char *kCsvHeader = "inequality,q,N,shape,trial,lhs,rhs,slack,holds";

inline std::string report_to_csv_row(const InequalityReport &r) {
    std::ostringstream os;
    os << inequality_name(r.id) << ',' << (r.q ? format_double(*r.q) : std::string()) << ',' << r.n << ',';
    for (std::size_t i = 0; i < r.shape.size(); ++i) os << (i ? "x" : "") << r.shape[i];
    os << ',' << (r.trial ? std::to_string(*r.trial) : std::string()) << ',' << format_double(r.lhs) << ','
       << format_double(r.rhs) << ',' << format_double(r.slack) << ',' << (r.holds ? "true" : "false");
    return os.str();
}

}  // namespace qtomo

#endif
