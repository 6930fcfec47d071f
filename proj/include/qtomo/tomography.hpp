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

#ifndef QTOMO_TOMOGRAPHY_HPP
#define QTOMO_TOMOGRAPHY_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtomo/error.hpp"
#include "qtomo/indexing.hpp"
#include "qtomo/linalg.hpp"
#include "qtomo/report.hpp"

namespace qtomo {

/// Probability vector of a tomogram. Entries in [-1e-12, 0) are clamped to zero on
/// construction; anything more negative, or a sum off by more than 1e-10, is rejected.
class TomogramVector {
   public:
    static constexpr double kNegativeFloor = 1e-12;
    static constexpr double kSumTolerance = 1e-10;

    explicit TomogramVector(std::vector<double> p) : p_(std::move(p)) {
        if (p_.empty()) {
            throw Error(ErrorCode::InvalidProbability, "empty probability vector");
        }
        double sum = 0.0;
        for (double &x : p_) {
            if (!std::isfinite(x) || x < -kNegativeFloor) {
                throw Error(ErrorCode::InvalidProbability, "entry " + std::to_string(x) + " is not a probability", x);
            }
            if (x < 0.0) x = 0.0;
            sum += x;
        }
        if (std::abs(sum - 1.0) > kSumTolerance) {
            throw Error(ErrorCode::InvalidProbability, "entries sum to " + std::to_string(sum), sum);
        }
    }

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    std::span<const double> probabilities() const { return p_; }
    const std::vector<double> &values() const { return p_; }

   private:
    std::vector<double> p_;
};

/// diag(u rho u^dagger).
inline TomogramVector tomogram(const DensityMatrix &rho, const UnitaryMatrix &u) {
    if (rho.dim() != u.dim()) {
        throw Error(ErrorCode::DimMismatch,
                    "state dimension " + std::to_string(rho.dim()) + " vs unitary " + std::to_string(u.dim()));
    }
    const ComplexMatrix &um = u.matrix();
    RealVector diag = (um * rho.matrix()).cwiseProduct(um.conjugate()).rowwise().sum().real();
    return TomogramVector(std::vector<double>(diag.begin(), diag.end()));
}

/// |u u0|^2 applied to the eigenvalue vector, with u0 the eigenvector matrix of rho.
/// Agrees with `tomogram` for any choice of eigenbasis inside degenerate eigenspaces.
inline TomogramVector tomogram_spectral(const DensityMatrix &rho, const UnitaryMatrix &u) {
    if (rho.dim() != u.dim()) {
        throw Error(ErrorCode::DimMismatch,
                    "state dimension " + std::to_string(rho.dim()) + " vs unitary " + std::to_string(u.dim()));
    }
    SpectralDecomposition spec = rho.spectrum();
    RealVector w = abs_squared(u.matrix() * spec.eigenvectors) * spec.eigenvalues;
    return TomogramVector(std::vector<double>(w.begin(), w.end()));
}

/// Kronecker fold u_1 (x) u_2 (x) ... in the given order.
inline UnitaryMatrix product_unitary(std::span<const UnitaryMatrix> parts) {
    if (parts.empty()) {
        throw Error(ErrorCode::DimMismatch, "product_unitary needs at least one factor");
    }
    ComplexMatrix acc = parts.front().matrix();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = kron(acc, parts[i].matrix());
    // Tolerance scales with the number of factors; each factor is already unitary.
    Tolerances tol;
    tol.unitary = 1e-10 * static_cast<double>(parts.size());
    return UnitaryMatrix(std::move(acc), tol);
}

inline UnitaryMatrix product_unitary(std::initializer_list<UnitaryMatrix> parts) {
    return product_unitary(std::span<const UnitaryMatrix>(parts.begin(), parts.size()));
}

/// Spin quantum number stored as 2j.
struct Spin {
    int two_j = 0;

    static Spin from_value(double j) {
        double twice = 2.0 * j;
        if (!std::isfinite(twice) || twice < 0.0 || std::abs(twice - std::round(twice)) > 1e-12) {
            throw Error(ErrorCode::BadSpin, "spin must be a non-negative half-integer, got " + std::to_string(j), j);
        }
        return Spin{static_cast<int>(std::lround(twice))};
    }
    static Spin from_dimension(int n) {
        if (n < 1) throw Error(ErrorCode::BadSpin, "dimension must be >= 1", n);
        return Spin{n - 1};
    }

    int dimension() const { return two_j + 1; }
    double value() const { return 0.5 * two_j; }
    /// Projection m of 1-based basis index; index 1 is m = +j, descending.
    double projection(int index) const { return value() - (index - 1); }
};

/// "+5/2", "-1/2", "0", "+1".
inline std::string projection_label(Spin spin, int index) {
    int twice_m = spin.two_j - 2 * (index - 1);
    std::string sign = twice_m > 0 ? "+" : (twice_m < 0 ? "-" : "");
    int mag = std::abs(twice_m);
    if (mag % 2 == 0) return sign + std::to_string(mag / 2);
    return sign + std::to_string(mag) + "/2";
}

struct SU2Angles {
    double theta = 0.0;
    double phi = 0.0;
};

/// Wigner small-d element d^j_{m' m}(theta), factorial-sum form.
inline double wigner_small_d(Spin spin, int twice_mp, int twice_m, double theta) {
    const int jp = (spin.two_j + twice_mp) / 2;  // j + m'
    const int jmp = (spin.two_j - twice_mp) / 2;  // j - m'
    const int jm = (spin.two_j + twice_m) / 2;   // j + m
    const int jmm = (spin.two_j - twice_m) / 2;  // j - m
    const int mp_minus_m = (twice_mp - twice_m) / 2;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double log_pref =
        0.5 * (std::lgamma(jp + 1.0) + std::lgamma(jmp + 1.0) + std::lgamma(jm + 1.0) + std::lgamma(jmm + 1.0));
    double sum = 0.0;
    const int k_min = std::max(0, -mp_minus_m);
    const int k_max = std::min(jm, jmp);
    for (int k = k_min; k <= k_max; ++k) {
        double log_den = std::lgamma(jm - k + 1.0) + std::lgamma(k + 1.0) + std::lgamma(jmp - k + 1.0) +
                         std::lgamma(k + mp_minus_m + 1.0);
        double sign = ((k + mp_minus_m) % 2 == 0) ? 1.0 : -1.0;
        int cos_pow = spin.two_j - mp_minus_m - 2 * k;
        int sin_pow = 2 * k + mp_minus_m;
        sum += sign * std::exp(log_pref - log_den) * std::pow(c, cos_pow) * std::pow(s, sin_pow);
    }
    return sum;
}

/// Rotation of the spin-j irrep in the descending-m basis (index 1 is m = +j):
/// u_{m' m} = d^j_{m' m}(theta) exp(-i m phi). The left phase of the full Wigner D matrix
/// is dropped since it cancels on the diagonal of u rho u^dagger.
inline UnitaryMatrix su2_irrep(Spin spin, SU2Angles angles) {
    if (spin.two_j < 0) throw Error(ErrorCode::BadSpin, "negative spin");
    if (!std::isfinite(angles.theta) || !std::isfinite(angles.phi)) {
        throw Error(ErrorCode::InvalidConfig, "rotation angles must be finite");
    }
    const int n = spin.dimension();
    ComplexMatrix u(n, n);
    for (int r = 0; r < n; ++r) {
        const int twice_mp = spin.two_j - 2 * r;
        for (int c = 0; c < n; ++c) {
            const int twice_m = spin.two_j - 2 * c;
            u(r, c) = wigner_small_d(spin, twice_mp, twice_m, angles.theta) *
                      std::polar(1.0, -0.5 * twice_m * angles.phi);
        }
    }
    return UnitaryMatrix(std::move(u));
}

inline TomogramVector marginal_tomogram(const TomogramVector &w, const FactorShape &shape, const KeepSet &keep) {
    if (static_cast<int>(w.size()) != shape.total()) {
        throw Error(ErrorCode::ShapeMismatch, "tomogram length " + std::to_string(w.size()) +
                                                  " does not match shape " + shape.to_string());
    }
    return TomogramVector(marginalization_matrix(shape, keep).apply(w.probabilities()));
}

enum class NoSignalingSide {
    /// Marginal on factor 1 while the factor-2 unitary varies.
    First,
    /// Marginal on factor 2 while the factor-1 unitary varies.
    Second,
};

/// Evaluates the no-signaling identity on a bipartite shape (n, m).
///
/// For side First, `fixed` acts on factor 1 and each entry of `partners` on factor 2; the
/// factor-1 marginal of tomogram(rho, fixed (x) partner) must not depend on the partner and must
/// equal tomogram(rho_1, fixed). Side Second mirrors this. The report's lhs is the largest
/// entrywise deviation found, rhs is 0, and the verdict holds when lhs <= tolerance.
inline InequalityReport check_no_signaling(const DensityMatrix &rho, const FactorShape &shape,
                                           const UnitaryMatrix &fixed, std::span<const UnitaryMatrix> partners,
                                           NoSignalingSide side = NoSignalingSide::First, double tolerance = 1e-10) {
    if (shape.factors() != 2) {
        throw Error(ErrorCode::DimMismatch, "no-signaling check needs a bipartite shape, got " + shape.to_string());
    }
    if (rho.dim() != shape.total()) {
        throw Error(ErrorCode::DimMismatch, "state dimension " + std::to_string(rho.dim()) + " vs shape " +
                                                shape.to_string());
    }
    const bool first = side == NoSignalingSide::First;
    const std::size_t kept_pos = first ? 1 : 2;
    const int kept_dim = shape.dim(kept_pos);
    const int other_dim = shape.dim(first ? 2 : 1);
    if (fixed.dim() != kept_dim) {
        throw Error(ErrorCode::DimMismatch, "fixed unitary has dimension " + std::to_string(fixed.dim()) +
                                                ", expected " + std::to_string(kept_dim));
    }
    for (const auto &p : partners) {
        if (p.dim() != other_dim) {
            throw Error(ErrorCode::DimMismatch, "partner unitary has dimension " + std::to_string(p.dim()) +
                                                    ", expected " + std::to_string(other_dim));
        }
    }

    const KeepSet keep{kept_pos};
    const MarginalizationMatrix marg = marginalization_matrix(shape, keep);
    TomogramVector reduced = tomogram(reduce_density(rho, shape, keep), fixed);
    std::vector<double> reference(static_cast<std::size_t>(shape.total()), 0.0);
    std::copy(reduced.values().begin(), reduced.values().end(), reference.begin());

    double across = 0.0;
    double vs_reduced = 0.0;
    std::vector<double> first_marginal;
    for (const auto &partner : partners) {
        UnitaryMatrix u = first ? product_unitary({fixed, partner}) : product_unitary({partner, fixed});
        std::vector<double> w = marg.apply(tomogram(rho, u).probabilities());
        if (first_marginal.empty()) first_marginal = w;
        for (std::size_t i = 0; i < w.size(); ++i) {
            across = std::max(across, std::abs(w[i] - first_marginal[i]));
            vs_reduced = std::max(vs_reduced, std::abs(w[i] - reference[i]));
        }
    }
    const double deviation = std::max(across, vs_reduced);
    InequalityReport report =
        make_report(InequalityId::NoSignaling, std::nullopt, static_cast<int>(rho.dim()), shape.dims(), deviation,
                    0.0, tolerance);
    report.extra["max_deviation"] = deviation;
    report.extra["deviation_across_partners"] = across;
    report.extra["deviation_from_reduced"] = vs_reduced;
    report.extra["side"] = std::string(first ? "first" : "second");
    report.extra["partners"] = static_cast<std::int64_t>(partners.size());
    return report;
}

}  // namespace qtomo

#endif
