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

#ifndef QTOMO_ENTROPY_HPP
#define QTOMO_ENTROPY_HPP

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qtomo/error.hpp"
#include "qtomo/linalg.hpp"
#include "qtomo/tomography.hpp"

namespace qtomo {

/// Tsallis index. Only q >= 1 is supported; values within `kShannonWindow` of 1 are
/// evaluated with the Shannon/von Neumann limit.
class QParameter {
   public:
    static constexpr double kShannonWindow = 1e-8;

    QParameter(double q) : q_(q) {  // NOLINT(google-explicit-constructor)
        if (!(q >= 1.0) || !std::isfinite(q)) {
            throw Error(ErrorCode::QOutOfRange, "q must be a finite value >= 1, got " + std::to_string(q), q);
        }
    }

    double value() const { return q_; }
    bool shannon_limit() const { return q_ - 1.0 <= kShannonWindow; }

   private:
    double q_;
};

namespace detail {

inline void check_probabilities(std::span<const double> p) {
    if (p.empty()) throw Error(ErrorCode::InvalidProbability, "empty probability vector");
    double sum = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || x < -TomogramVector::kNegativeFloor) {
            throw Error(ErrorCode::InvalidProbability, "entry " + std::to_string(x) + " is not a probability", x);
        }
        if (x > 0.0) sum += x;
    }
    if (std::abs(sum - 1.0) > TomogramVector::kSumTolerance) {
        throw Error(ErrorCode::InvalidProbability, "entries sum to " + std::to_string(sum), sum);
    }
}

inline double shannon_unchecked(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h -= x * std::log(x);
    }
    return h;
}

/// Sum of p^q over strictly positive entries.
inline double power_sum(std::span<const double> p, double q) {
    double acc = 0.0;
    for (double x : p) {
        if (x > 0.0) acc += std::pow(x, q);
    }
    return acc;
}

inline RealVector clamped_spectrum(const DensityMatrix &rho) {
    return rho.spectrum().eigenvalues.cwiseMax(0.0);
}

}  // namespace detail

/// Natural-log Shannon entropy, 0 ln 0 = 0.
inline double shannon(std::span<const double> p) {
    detail::check_probabilities(p);
    return detail::shannon_unchecked(p);
}

inline double shannon(const TomogramVector &p) { return detail::shannon_unchecked(p.probabilities()); }

/// (1 - sum p^q) / (q - 1); Shannon entropy when q is within the limit window of 1.
inline double tsallis_classical(std::span<const double> p, QParameter q) {
    detail::check_probabilities(p);
    if (q.shannon_limit()) return detail::shannon_unchecked(p);
    return (1.0 - detail::power_sum(p, q.value())) / (q.value() - 1.0);
}

inline double tsallis_classical(const TomogramVector &p, QParameter q) {
    return tsallis_classical(p.probabilities(), q);
}

inline double von_neumann(const DensityMatrix &rho) {
    RealVector spec = detail::clamped_spectrum(rho);
    return detail::shannon_unchecked(std::span<const double>(spec.data(), static_cast<std::size_t>(spec.size())));
}

/// -Tr rho^q (rho^{1-q} - 1) / (1 - q), evaluated on the spectrum.
inline double tsallis_quantum(const DensityMatrix &rho, QParameter q) {
    RealVector spec = detail::clamped_spectrum(rho);
    std::span<const double> p(spec.data(), static_cast<std::size_t>(spec.size()));
    if (q.shannon_limit()) return detail::shannon_unchecked(p);
    return (1.0 - detail::power_sum(p, q.value())) / (q.value() - 1.0);
}

}  // namespace qtomo

#endif
