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

#ifndef QTOMO_INDEXING_HPP
#define QTOMO_INDEXING_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtomo/error.hpp"
#include "qtomo/linalg.hpp"

namespace qtomo {

/// Ordered factor dimensions (n_1, ..., n_f) of a composite index space with N = prod n_j.
///
/// Composite indices are row-major: the last factor varies fastest. Every 1-based index
/// s in [1, N] corresponds to exactly one multi-index (i_1, ..., i_f), i_j in [1, n_j].
class FactorShape {
   public:
    explicit FactorShape(std::vector<int> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) {
            throw Error(ErrorCode::ShapeMismatch, "shape needs at least one factor");
        }
        for (int d : dims_) {
            if (d < 1) {
                throw Error(ErrorCode::ShapeMismatch, "factor dimensions must be >= 1, got " + std::to_string(d), d);
            }
        }
    }

    const std::vector<int> &dims() const { return dims_; }
    std::size_t factors() const { return dims_.size(); }
    /// 1-based factor position.
    int dim(std::size_t position) const { return dims_.at(position - 1); }
    int total() const { return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>()); }

    std::string to_string(char sep = 'x') const {
        std::string out;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (i) out += sep;
            out += std::to_string(dims_[i]);
        }
        return out;
    }

    friend bool operator==(const FactorShape &, const FactorShape &) = default;

   private:
    std::vector<int> dims_;
};

/// 1-based multi-index components.
using MultiIndex = std::vector<int>;

/// Ascending, 1-based factor positions to keep when marginalizing.
using KeepSet = std::vector<std::size_t>;

inline int compose_index(const FactorShape &shape, const MultiIndex &idx) {
    if (idx.size() != shape.factors()) {
        throw Error(ErrorCode::IndexOutOfRange, "multi-index has " + std::to_string(idx.size()) +
                                                    " components, shape has " + std::to_string(shape.factors()));
    }
    int s = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        int n = shape.dims()[j];
        if (idx[j] < 1 || idx[j] > n) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "component " + std::to_string(j + 1) + " = " + std::to_string(idx[j]) + " outside [1, " +
                            std::to_string(n) + "]",
                        idx[j]);
        }
        s = s * n + (idx[j] - 1);
    }
    return s + 1;
}

inline MultiIndex decompose_index(const FactorShape &shape, int s) {
    const int total = shape.total();
    if (s < 1 || s > total) {
        throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(s) + " outside [1, " + std::to_string(total) + "]",
                    s);
    }
    MultiIndex idx(shape.factors());
    int rest = s - 1;
    for (std::size_t j = shape.factors(); j-- > 0;) {
        int n = shape.dims()[j];
        idx[j] = rest % n + 1;
        rest /= n;
    }
    return idx;
}

inline void validate_keep(const FactorShape &shape, const KeepSet &keep) {
    if (keep.empty()) {
        throw Error(ErrorCode::EmptyKeepSet, "keep set must name at least one factor");
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 1 || keep[i] > shape.factors()) {
            throw Error(ErrorCode::BadPosition,
                        "factor position " + std::to_string(keep[i]) + " outside [1, " +
                            std::to_string(shape.factors()) + "]",
                        static_cast<double>(keep[i]));
        }
        if (i > 0 && keep[i] <= keep[i - 1]) {
            throw Error(ErrorCode::BadPosition, "keep positions must be strictly ascending",
                        static_cast<double>(keep[i]));
        }
    }
}

/// Shape formed by the kept factors, in ascending position order.
inline FactorShape kept_shape(const FactorShape &shape, const KeepSet &keep) {
    validate_keep(shape, keep);
    std::vector<int> dims;
    for (std::size_t p : keep) dims.push_back(shape.dim(p));
    return FactorShape(std::move(dims));
}

/// Complement of `keep`, ascending.
inline KeepSet discarded_positions(const FactorShape &shape, const KeepSet &keep) {
    validate_keep(shape, keep);
    KeepSet out;
    std::size_t k = 0;
    for (std::size_t p = 1; p <= shape.factors(); ++p) {
        if (k < keep.size() && keep[k] == p) {
            ++k;
        } else {
            out.push_back(p);
        }
    }
    return out;
}

/// For each 0-based composite index s, the 0-based row of the kept multi-index.
inline std::vector<int> kept_row_map(const FactorShape &shape, const KeepSet &keep) {
    FactorShape sub = kept_shape(shape, keep);
    std::vector<int> rows(static_cast<std::size_t>(shape.total()));
    MultiIndex kept(keep.size());
    for (int s = 1; s <= shape.total(); ++s) {
        MultiIndex full = decompose_index(shape, s);
        for (std::size_t k = 0; k < keep.size(); ++k) kept[k] = full[keep[k] - 1];
        rows[static_cast<std::size_t>(s - 1)] = compose_index(sub, kept) - 1;
    }
    return rows;
}

/// N x N 0/1 matrix whose product with a joint probability vector yields the marginal over the
/// discarded factors, packed into the leading prod(kept dims) rows. Each column holds one 1.
class MarginalizationMatrix {
   public:
    MarginalizationMatrix(const FactorShape &shape, KeepSet keep)
        : shape_(shape), keep_(std::move(keep)), rows_(kept_row_map(shape_, keep_)) {
        const int n = shape_.total();
        matrix_ = RealMatrix::Zero(n, n);
        for (int s = 0; s < n; ++s) matrix_(rows_[static_cast<std::size_t>(s)], s) = 1.0;
    }

    const FactorShape &shape() const { return shape_; }
    const KeepSet &keep() const { return keep_; }
    const RealMatrix &matrix() const { return matrix_; }
    int kept_size() const { return kept_shape(shape_, keep_).total(); }

    /// Summation in column order.
    std::vector<double> apply(std::span<const double> w) const {
        if (w.size() != rows_.size()) {
            throw Error(ErrorCode::ShapeMismatch, "vector length " + std::to_string(w.size()) +
                                                      " does not match shape total " +
                                                      std::to_string(rows_.size()));
        }
        std::vector<double> out(w.size(), 0.0);
        for (std::size_t s = 0; s < w.size(); ++s) out[static_cast<std::size_t>(rows_[s])] += w[s];
        return out;
    }

   private:
    FactorShape shape_;
    KeepSet keep_;
    std::vector<int> rows_;
    RealMatrix matrix_;
};

inline MarginalizationMatrix marginalization_matrix(const FactorShape &shape, const KeepSet &keep) {
    return MarginalizationMatrix(shape, keep);
}

/// Generalized partial trace: sums over the discarded factors with their indices held equal on
/// both sides. For shape (n, m), keep {1} is the block-trace matrix and keep {2} the block sum.
inline DensityMatrix reduce_density(const DensityMatrix &rho, const FactorShape &shape, const KeepSet &keep,
                                    const Tolerances &tol = {}) {
    if (rho.dim() != shape.total()) {
        throw Error(ErrorCode::ShapeMismatch, "density matrix dimension " + std::to_string(rho.dim()) +
                                                  " does not match shape " + shape.to_string() + " (total " +
                                                  std::to_string(shape.total()) + ")");
    }
    const std::vector<int> rows = kept_row_map(shape, keep);
    const KeepSet traced = discarded_positions(shape, keep);
    // Index into the traced-out factors; constant when nothing is traced.
    const std::vector<int> env =
        traced.empty() ? std::vector<int>(rows.size(), 0) : kept_row_map(shape, traced);
    const int kept = kept_shape(shape, keep).total();
    ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
    const ComplexMatrix &m = rho.matrix();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
            if (env[static_cast<std::size_t>(a)] == env[static_cast<std::size_t>(b)]) {
                out(rows[static_cast<std::size_t>(a)], rows[static_cast<std::size_t>(b)]) += m(a, b);
            }
        }
    }
    return validate_density(out, tol);
}

/// Embeds rho in the top-left block of a zero target x target matrix.
inline DensityMatrix pad_density(const DensityMatrix &rho, Eigen::Index target, const Tolerances &tol = {}) {
    if (target < rho.dim()) {
        throw Error(ErrorCode::TargetTooSmall,
                    "target " + std::to_string(target) + " smaller than dimension " + std::to_string(rho.dim()),
                    static_cast<double>(target));
    }
    ComplexMatrix out = ComplexMatrix::Zero(target, target);
    out.topLeftCorner(rho.dim(), rho.dim()) = rho.matrix();
    return validate_density(out, tol);
}

/// Smallest N' >= n expressible as a product of `factors` integers each >= 2, returned with the
/// most balanced such factorization (non-increasing factors). Padding to this dimension makes the
/// requested number of nontrivial factors available.
inline FactorShape suggest_padded_shape(int n, std::size_t factors) {
    if (factors == 0 || n < 1) {
        throw Error(ErrorCode::InvalidConfig, "need n >= 1 and at least one factor");
    }
    for (int target = std::max(n, 1 << factors);; ++target) {
        // Greedy search over non-increasing factorizations, preferring the most balanced one.
        std::vector<int> best;
        std::vector<int> current;
        auto search = [&](auto &&self, int remaining, std::size_t left, int max_factor) -> void {
            if (left == 0) {
                if (remaining == 1 && (best.empty() || current.front() < best.front())) best = current;
                return;
            }
            for (int f = std::min(max_factor, remaining); f >= 2; --f) {
                if (remaining % f != 0) continue;
                current.push_back(f);
                self(self, remaining / f, left - 1, f);
                current.pop_back();
            }
        };
        search(search, target, factors, target);
        if (!best.empty()) return FactorShape(best);
    }
}

}  // namespace qtomo

#endif
