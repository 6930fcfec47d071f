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

#ifndef QTOMO_REPORT_HPP
#define QTOMO_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qtomo/error.hpp"
#include "qtomo/linalg.hpp"

namespace qtomo {

enum class InequalityId { SubTomo, SubQuantum, SsaTomo, Mixed, SumformA1, NoSignaling };

/// Identifier as emitted in reports ("SUB_TOMO", ...).
inline std::string_view inequality_name(InequalityId id) {
    switch (id) {
        case InequalityId::SubTomo: return "SUB_TOMO";
        case InequalityId::SubQuantum: return "SUB_QUANTUM";
        case InequalityId::SsaTomo: return "SSA_TOMO";
        case InequalityId::Mixed: return "MIXED";
        case InequalityId::SumformA1: return "SUMFORM_A1";
        case InequalityId::NoSignaling: return "NOSIG";
    }
    return "UNKNOWN";
}

/// Command-line spelling ("sub-tomo", ...).
inline std::string_view inequality_flag(InequalityId id) {
    switch (id) {
        case InequalityId::SubTomo: return "sub-tomo";
        case InequalityId::SubQuantum: return "sub-quantum";
        case InequalityId::SsaTomo: return "ssa-tomo";
        case InequalityId::Mixed: return "mixed";
        case InequalityId::SumformA1: return "sumform-a1";
        case InequalityId::NoSignaling: return "nosig";
    }
    return "unknown";
}

inline InequalityId parse_inequality(std::string_view text) {
    for (auto id : {InequalityId::SubTomo, InequalityId::SubQuantum, InequalityId::SsaTomo, InequalityId::Mixed,
                    InequalityId::SumformA1, InequalityId::NoSignaling}) {
        if (text == inequality_flag(id) || text == inequality_name(id)) return id;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown inequality '" + std::string(text) + "'");
}

using ExtraValue = std::variant<bool, std::int64_t, double, std::string>;

/// State and unitary that produced a failing verdict.
struct Counterexample {
    ComplexMatrix rho;
    std::optional<ComplexMatrix> unitary;
};

/// Verdict of one inequality evaluation. `slack` is rhs - lhs as computed and
/// `holds` is exactly `slack >= -tolerance`.
struct InequalityReport {
    InequalityId id = InequalityId::SubTomo;
    std::optional<double> q;
    int n = 0;
    std::vector<int> shape;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trial;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = true;
    double tolerance = 0.0;
    std::map<std::string, ExtraValue> extra;
    std::optional<Counterexample> counterexample;
};

inline InequalityReport make_report(InequalityId id, std::optional<double> q, int n, std::vector<int> shape,
                                    double lhs, double rhs, double tolerance) {
    InequalityReport r;
    r.id = id;
    r.q = q;
    r.n = n;
    r.shape = std::move(shape);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.holds = r.slack >= -tolerance;
    r.tolerance = tolerance;
    return r;
}

}  // namespace qtomo

#endif
