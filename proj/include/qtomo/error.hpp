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

#ifndef QTOMO_ERROR_HPP
#define QTOMO_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qtomo {

enum class ErrorCode {
    NotSquare,
    NotHermitian,
    NotUnitary,
    TraceNotOne,
    NotPositiveSemidefinite,
    IndexOutOfRange,
    EmptyKeepSet,
    BadPosition,
    ShapeMismatch,
    TargetTooSmall,
    DimMismatch,
    BadSpin,
    QOutOfRange,
    NonProductInput,
    BadRank,
    InvalidProbability,
    InvalidConfig,
    Io,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::TraceNotOne: return "TraceNotOne";
        case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
        case ErrorCode::BadPosition: return "BadPosition";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::TargetTooSmall: return "TargetTooSmall";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::BadSpin: return "BadSpin";
        case ErrorCode::QOutOfRange: return "QOutOfRange";
        case ErrorCode::NonProductInput: return "NonProductInput";
        case ErrorCode::BadRank: return "BadRank";
        case ErrorCode::InvalidProbability: return "InvalidProbability";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

/// Every failure in the library is reported through this type. `value()` carries the
/// offending number where one exists (actual trace, minimum eigenvalue, ...).
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message, std::optional<double> value = std::nullopt)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), value_(value) {}

    ErrorCode code() const noexcept { return code_; }
    std::optional<double> value() const noexcept { return value_; }

   private:
    ErrorCode code_;
    std::optional<double> value_;
};

}  // namespace qtomo

#endif
