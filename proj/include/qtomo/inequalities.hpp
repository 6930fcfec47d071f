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

#ifndef QTOMO_INEQUALITIES_HPP
#define QTOMO_INEQUALITIES_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtomo/entropy.hpp"
#include "qtomo/error.hpp"
#include "qtomo/indexing.hpp"
#include "qtomo/linalg.hpp"
#include "qtomo/report.hpp"
#include "qtomo/sampling.hpp"
#include "qtomo/tomography.hpp"

namespace qtomo {

constexpr double kDefaultSlackTolerance = 1e-9;

namespace detail {

inline void require_factors(const FactorShape &shape, std::size_t factors, const char *what) {
    if (shape.factors() != factors) {
        throw Error(ErrorCode::ShapeMismatch, std::string(what) + " needs a " + std::to_string(factors) +
                                                  "-factor shape, got " + shape.to_string());
    }
}

inline void require_total(const FactorShape &shape, Eigen::Index n) {
    if (shape.total() != n) {
        throw Error(ErrorCode::ShapeMismatch, "dimension " + std::to_string(n) + " does not match shape " +
                                                  shape.to_string() + " (total " + std::to_string(shape.total()) +
                                                  ")");
    }
}

inline void attach_counterexample(InequalityReport &report, const DensityMatrix &rho, const UnitaryMatrix *u) {
    if (report.holds) return;
    Counterexample ce{rho.matrix(), std::nullopt};
    if (u) ce.unitary = u->matrix();
    report.counterexample = std::move(ce);
}

inline std::vector<double> marginal(const TomogramVector &w, const FactorShape &shape, const KeepSet &keep) {
    return marginalization_matrix(shape, keep).apply(w.probabilities());
}

}  // namespace detail

/// S_q(w) <= S_q(Omega_1) + S_q(Omega_2) for the tomogram w = diag(u rho u^dagger) on shape (n, m).
inline InequalityReport check_subadditivity_tomographic(const DensityMatrix &rho, const UnitaryMatrix &u,
                                                        const FactorShape &shape, QParameter q,
                                                        double tolerance = kDefaultSlackTolerance) {
    detail::require_factors(shape, 2, "tomographic subadditivity");
    detail::require_total(shape, rho.dim());
    TomogramVector w = tomogram(rho, u);
    double lhs = tsallis_classical(w, q);
    double rhs = tsallis_classical(detail::marginal(w, shape, {1}), q) +
                 tsallis_classical(detail::marginal(w, shape, {2}), q);
    auto report = make_report(InequalityId::SubTomo, q.value(), static_cast<int>(rho.dim()), shape.dims(), lhs, rhs,
                              tolerance);
    detail::attach_counterexample(report, rho, &u);
    return report;
}

/// S_q(rho) <= S_q(rho_1) + S_q(rho_2). Recorded, never assumed.
inline InequalityReport check_subadditivity_quantum(const DensityMatrix &rho, const FactorShape &shape, QParameter q,
                                                    double tolerance = kDefaultSlackTolerance) {
    detail::require_factors(shape, 2, "quantum subadditivity");
    detail::require_total(shape, rho.dim());
    double lhs = tsallis_quantum(rho, q);
    double rhs = tsallis_quantum(reduce_density(rho, shape, {1}), q) +
                 tsallis_quantum(reduce_density(rho, shape, {2}), q);
    auto report = make_report(InequalityId::SubQuantum, q.value(), static_cast<int>(rho.dim()), shape.dims(), lhs,
                              rhs, tolerance);
    detail::attach_counterexample(report, rho, nullptr);
    return report;
}

/// S_q(w) + S_q(w_2) <= S_q(w_12) + S_q(w_23) on shape (n1, n2, n3).
/// Dimensions that do not factor should be padded with `pad_density` first.
inline InequalityReport check_ssa_tomographic(const DensityMatrix &rho, const UnitaryMatrix &u,
                                              const FactorShape &shape, QParameter q,
                                              double tolerance = kDefaultSlackTolerance) {
    detail::require_factors(shape, 3, "strong subadditivity");
    detail::require_total(shape, rho.dim());
    TomogramVector w = tomogram(rho, u);
    double lhs = tsallis_classical(w, q) + tsallis_classical(detail::marginal(w, shape, {2}), q);
    double rhs = tsallis_classical(detail::marginal(w, shape, {1, 2}), q) +
                 tsallis_classical(detail::marginal(w, shape, {2, 3}), q);
    auto report = make_report(InequalityId::SsaTomo, q.value(), static_cast<int>(rho.dim()), shape.dims(), lhs, rhs,
                              tolerance);
    detail::attach_counterexample(report, rho, &u);
    return report;
}

/// Largest ratio sigma_2 / sigma_1 of the realigned matrix over every cut of `shape`; zero
/// exactly when u factors as a Kronecker product with the given factor dimensions.
inline double kron_factorization_residual(const ComplexMatrix &u, const FactorShape &shape) {
    detail::require_total(shape, u.rows());
    double worst = 0.0;
    int left = 1;
    for (std::size_t cut = 1; cut < shape.factors(); ++cut) {
        left *= shape.dim(cut);
        const int right = shape.total() / left;
        ComplexMatrix realigned(left * left, right * right);
        for (int i = 0; i < left; ++i) {
            for (int j = 0; j < left; ++j) {
                for (int k = 0; k < right; ++k) {
                    for (int l = 0; l < right; ++l) {
                        realigned(i * left + j, k * right + l) = u(i * right + k, j * right + l);
                    }
                }
            }
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(realigned);
        const auto &sv = svd.singularValues();
        if (sv.size() > 1 && sv(0) > 0.0) worst = std::max(worst, sv(1) / sv(0));
    }
    return worst;
}

namespace detail {

inline InequalityReport mixed_report(const DensityMatrix &rho, const UnitaryMatrix &u, const FactorShape &shape,
                                     QParameter q, double tolerance) {
    TomogramVector w = tomogram(rho, u);
    double lhs = tsallis_quantum(rho, q) + tsallis_quantum(reduce_density(rho, shape, {2}), q);
    double rhs = tsallis_classical(marginal(w, shape, {1, 2}), q) + tsallis_classical(marginal(w, shape, {2, 3}), q);
    auto report =
        make_report(InequalityId::Mixed, q.value(), static_cast<int>(rho.dim()), shape.dims(), lhs, rhs, tolerance);
    attach_counterexample(report, rho, &u);
    return report;
}

}  // namespace detail

/// S_q(rho) + S_q(rho_2) <= S_q(w_12) + S_q(w_23) with w the tomogram under u_1 (x) u_2 (x) u_3.
inline InequalityReport check_mixed_inequality(const DensityMatrix &rho, std::span<const UnitaryMatrix> factors,
                                               const FactorShape &shape, QParameter q,
                                               double tolerance = kDefaultSlackTolerance) {
    detail::require_factors(shape, 3, "mixed inequality");
    detail::require_total(shape, rho.dim());
    if (factors.size() != 3) {
        throw Error(ErrorCode::NonProductInput, "expected three local unitaries, got " + std::to_string(factors.size()));
    }
    for (std::size_t i = 0; i < 3; ++i) {
        if (factors[i].dim() != shape.dims()[i]) {
            throw Error(ErrorCode::DimMismatch, "local unitary " + std::to_string(i + 1) + " has dimension " +
                                                    std::to_string(factors[i].dim()) + ", expected " +
                                                    std::to_string(shape.dims()[i]));
        }
    }
    return detail::mixed_report(rho, product_unitary(factors), shape, q, tolerance);
}

/// Variant for an already assembled unitary; rejects anything that is not u_1 (x) u_2 (x) u_3
/// for the factor dimensions of `shape`.
inline InequalityReport check_mixed_inequality(const DensityMatrix &rho, const UnitaryMatrix &u,
                                               const FactorShape &shape, QParameter q,
                                               double tolerance = kDefaultSlackTolerance,
                                               double product_tolerance = 1e-8) {
    detail::require_factors(shape, 3, "mixed inequality");
    detail::require_total(shape, rho.dim());
    detail::require_total(shape, u.dim());
    double residual = kron_factorization_residual(u.matrix(), shape);
    if (residual > product_tolerance) {
        throw Error(ErrorCode::NonProductInput,
                    "unitary is not a product over shape " + shape.to_string() + " (residual " +
                        std::to_string(residual) + ")",
                    residual);
    }
    return detail::mixed_report(rho, u, shape, q, tolerance);
}

/// Sum form of tomographic subadditivity:
///   sum_b [(M1 w)_b^q + (M2 w)_b^q] <= 1 + sum_a w_a^q,
/// which is the (n, m) subadditivity inequality multiplied through by (q - 1). The opposite
/// direction is evaluated as well and stored in extra["printed_direction_holds"]; it fails on
/// the uniform distribution, so it is kept as a diagnostic only.
inline InequalityReport check_sumform_a1(const DensityMatrix &rho, const UnitaryMatrix &u, const FactorShape &shape,
                                         QParameter q, double tolerance = kDefaultSlackTolerance) {
    detail::require_factors(shape, 2, "sum-form subadditivity");
    detail::require_total(shape, rho.dim());
    TomogramVector w = tomogram(rho, u);
    const double qv = q.value();
    double lhs = detail::power_sum(detail::marginal(w, shape, {1}), qv) +
                 detail::power_sum(detail::marginal(w, shape, {2}), qv);
    double rhs = 1.0 + detail::power_sum(w.probabilities(), qv);
    auto report = make_report(InequalityId::SumformA1, qv, static_cast<int>(rho.dim()), shape.dims(), lhs, rhs,
                              tolerance);
    report.extra["printed_direction_holds"] = rhs <= lhs + tolerance;
    detail::attach_counterexample(report, rho, &u);
    return report;
}

enum class UnitaryMode { Haar, Identity };

struct EnsembleConfig {
    std::vector<InequalityId> inequalities;
    int n = 0;
    std::optional<FactorShape> shape;
    std::vector<double> q_grid{1.0, 1.1, 1.5, 2.0, 3.0, 5.0};
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double tolerance = kDefaultSlackTolerance;
    double nosig_tolerance = 1e-10;
    /// 0 draws a rank uniformly from [1, n] per trial.
    int rank = 0;
    std::size_t partners = 20;
    bool pad = false;
    UnitaryMode unitaries = UnitaryMode::Haar;
    /// When set, every trial uses this state instead of sampling one.
    std::optional<DensityMatrix> state;
};

struct EnsembleSummary {
    std::size_t reports = 0;
    std::size_t violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> worst_index;
};

struct EnsembleResult {
    std::vector<InequalityReport> reports;
    EnsembleSummary summary;
};

inline EnsembleSummary summarize(std::span<const InequalityReport> reports) {
    EnsembleSummary s;
    s.reports = reports.size();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!reports[i].holds) ++s.violations;
        if (reports[i].slack < s.min_slack) {
            s.min_slack = reports[i].slack;
            s.worst_index = i;
        }
    }
    return s;
}

inline std::size_t factors_required(InequalityId id) {
    return (id == InequalityId::SsaTomo || id == InequalityId::Mixed) ? 3 : 2;
}

/// Resolved shape for a config: validates factor counts and padding.
inline FactorShape resolve_shape(const EnsembleConfig &config) {
    if (config.inequalities.empty()) throw Error(ErrorCode::InvalidConfig, "no inequality selected");
    const std::size_t factors = factors_required(config.inequalities.front());
    for (InequalityId id : config.inequalities) {
        if (factors_required(id) != factors) {
            throw Error(ErrorCode::InvalidConfig, "selected inequalities need different factor counts");
        }
    }
    if (config.n < 1) throw Error(ErrorCode::InvalidConfig, "N must be >= 1");
    FactorShape shape = config.shape ? *config.shape : suggest_padded_shape(config.n, factors);
    if (!config.shape && !config.pad && shape.total() != config.n) {
        throw Error(ErrorCode::ShapeMismatch, "N = " + std::to_string(config.n) +
                                                  " needs a --shape or --pad (suggested shape " + shape.to_string() +
                                                  ")");
    }
    if (shape.factors() != factors) {
        throw Error(ErrorCode::ShapeMismatch, std::string(inequality_name(config.inequalities.front())) + " needs " +
                                                  std::to_string(factors) + " factors, got shape " +
                                                  shape.to_string());
    }
    if (shape.total() != config.n) {
        if (!config.pad) {
            throw Error(ErrorCode::ShapeMismatch, "shape " + shape.to_string() + " has total " +
                                                      std::to_string(shape.total()) + " but N = " +
                                                      std::to_string(config.n) + " (use --pad)");
        }
        if (shape.total() < config.n) {
            throw Error(ErrorCode::TargetTooSmall, "shape " + shape.to_string() + " is smaller than N = " +
                                                       std::to_string(config.n));
        }
    }
    return shape;
}

/// Runs every selected checker over `trials` sampled (state, unitary) pairs.
///
/// Trial t draws from substream t of the seed, so results do not depend on evaluation order.
/// Reports are ordered by trial, then by inequality in config order, then by q.
inline EnsembleResult run_ensemble(const EnsembleConfig &config) {
    EnsembleResult result;
    if (config.trials == 0) {
        resolve_shape(config);
        result.summary = summarize(result.reports);
        return result;
    }
    const FactorShape shape = resolve_shape(config);
    std::vector<QParameter> qs(config.q_grid.begin(), config.q_grid.end());
    if (config.state && config.state->dim() != config.n) {
        throw Error(ErrorCode::ShapeMismatch, "input state has dimension " + std::to_string(config.state->dim()) +
                                                  ", N = " + std::to_string(config.n));
    }
    if (config.rank < 0 || config.rank > config.n) {
        throw Error(ErrorCode::BadRank, "rank must lie in [0, N]", config.rank);
    }
    const bool haar = config.unitaries == UnitaryMode::Haar;
    const std::string unitary_label = haar ? "haar" : "identity";
    const SeededGenerator root(config.seed);
    const int padded = shape.total();

    for (std::size_t t = 0; t < config.trials; ++t) {
        SeededGenerator trial_gen = root.substream(t);
        SeededGenerator state_gen = trial_gen.substream(0);
        SeededGenerator unitary_gen = trial_gen.substream(1);
        SeededGenerator partner_gen = trial_gen.substream(2);

        int rank = config.n;
        std::optional<DensityMatrix> sampled;
        if (!config.state) {
            rank = config.rank > 0 ? config.rank : state_gen.uniform_int(1, config.n);
            sampled = random_density(config.n, rank, state_gen);
        }
        const DensityMatrix &base = config.state ? *config.state : *sampled;
        const DensityMatrix rho = padded == base.dim() ? base : pad_density(base, padded);

        auto draw = [&](Eigen::Index d) { return haar ? haar_unitary(d, unitary_gen) : UnitaryMatrix::identity(d); };
        const UnitaryMatrix global = draw(padded);
        std::vector<UnitaryMatrix> locals;
        for (int d : shape.dims()) locals.push_back(draw(d));

        auto annotate = [&](InequalityReport &r, const std::string &unitary) {
            r.seed = config.seed;
            r.trial = t;
            r.n = config.n;
            if (padded != config.n) r.extra["padded_N"] = static_cast<std::int64_t>(padded);
            if (!config.state) r.extra["rank"] = static_cast<std::int64_t>(rank);
            r.extra["unitary"] = unitary;
            result.reports.push_back(std::move(r));
        };

        for (InequalityId id : config.inequalities) {
            if (id == InequalityId::NoSignaling) {
                std::vector<UnitaryMatrix> partners_2, partners_1;
                for (std::size_t k = 0; k < config.partners; ++k) {
                    partners_2.push_back(haar ? haar_unitary(shape.dim(2), partner_gen)
                                              : UnitaryMatrix::identity(shape.dim(2)));
                }
                for (std::size_t k = 0; k < config.partners; ++k) {
                    partners_1.push_back(haar ? haar_unitary(shape.dim(1), partner_gen)
                                              : UnitaryMatrix::identity(shape.dim(1)));
                }
                auto first = check_no_signaling(rho, shape, locals[0], partners_2, NoSignalingSide::First,
                                                config.nosig_tolerance);
                auto second = check_no_signaling(rho, shape, locals[1], partners_1, NoSignalingSide::Second,
                                                 config.nosig_tolerance);
                annotate(first, "product(" + unitary_label + ")");
                annotate(second, "product(" + unitary_label + ")");
                continue;
            }
            for (const QParameter &q : qs) {
                InequalityReport r;
                std::string label = unitary_label;
                switch (id) {
                    case InequalityId::SubTomo:
                        r = check_subadditivity_tomographic(rho, global, shape, q, config.tolerance);
                        break;
                    case InequalityId::SubQuantum:
                        r = check_subadditivity_quantum(rho, shape, q, config.tolerance);
                        label = "none";
                        break;
                    case InequalityId::SsaTomo:
                        r = check_ssa_tomographic(rho, global, shape, q, config.tolerance);
                        break;
                    case InequalityId::Mixed:
                        r = check_mixed_inequality(rho, std::span<const UnitaryMatrix>(locals), shape, q,
                                                   config.tolerance);
                        label = "product(" + unitary_label + ")";
                        break;
                    case InequalityId::SumformA1:
                        r = check_sumform_a1(rho, global, shape, q, config.tolerance);
                        break;
                    case InequalityId::NoSignaling:
                        break;
                }
                annotate(r, label);
            }
        }
    }
    result.summary = summarize(result.reports);
    return result;
}

}  // namespace qtomo

#endif
