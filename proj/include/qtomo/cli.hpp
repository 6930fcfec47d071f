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

// Subcommand implementations behind tools/qtomo.cpp. Each command writes its report stream to
// the configured output and diagnostics to `err`, and returns the process exit status:
// 0 when every verdict holds, 2 when any verdict fails, 1 on usage, IO or validation errors.

#ifndef QTOMO_CLI_HPP
#define QTOMO_CLI_HPP

#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qtomo/entropy.hpp"
#include "qtomo/error.hpp"
#include "qtomo/fixtures.hpp"
#include "qtomo/indexing.hpp"
#include "qtomo/inequalities.hpp"
#include "qtomo/io.hpp"
#include "qtomo/linalg.hpp"
#include "qtomo/sampling.hpp"
#include "qtomo/tomography.hpp"

namespace qtomo::cli {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

enum class OutputFormat { Json, Csv, Text };

struct Config {
    std::string command;
    std::vector<InequalityId> inequalities;
    std::optional<int> n;
    std::vector<int> shape;
    std::vector<double> q;
    std::optional<std::size_t> trials;
    std::uint64_t seed = 0;
    std::optional<double> tolerance;
    std::optional<std::string> input;
    std::optional<OutputFormat> format;
    std::optional<std::string> output;
    bool pad = false;
    int rank = 0;
    std::size_t partners = 20;
    UnitaryMode unitaries = UnitaryMode::Haar;
    /// "j52" or "j72" for the demo command.
    std::string demo;
};

inline OutputFormat parse_format(const std::string &text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "text") return OutputFormat::Text;
    throw Error(ErrorCode::InvalidConfig, "unknown output format '" + text + "'");
}

namespace detail {

/// Runs `body` against the configured output file, or `out` when none is set.
inline void with_output(const Config &config, std::ostream &out, const std::function<void(std::ostream &)> &body) {
    if (!config.output) {
        body(out);
        return;
    }
    // Render fully before touching the file so a failure leaves no partial output.
    std::ostringstream buffer;
    body(buffer);
    std::ofstream file(*config.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::Io, "cannot open '" + *config.output + "' for writing");
    file << buffer.str();
    if (!file) throw Error(ErrorCode::Io, "failed writing '" + *config.output + "'");
}

inline void write_reports(std::ostream &os, const std::vector<InequalityReport> &reports, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        os << kCsvHeader << '\n';
        for (const auto &r : reports) os << report_to_csv_row(r) << '\n';
        return;
    }
    for (const auto &r : reports) os << report_to_json(r).dump() << '\n';
}

inline void write_summary(std::ostream &err, const EnsembleSummary &s) {
    err << "reports: " << s.reports << "  violations: " << s.violations;
    if (s.worst_index) err << "  min slack: " << format_double(s.min_slack) << " (report " << *s.worst_index << ")";
    err << '\n';
}

inline std::optional<DensityMatrix> load_state(const Config &config) {
    if (!config.input) return std::nullopt;
    return validate_density(read_matrix_file(*config.input));
}

inline EnsembleConfig ensemble_config(const Config &config, std::size_t default_trials) {
    EnsembleConfig ec;
    ec.inequalities = config.inequalities;
    ec.state = load_state(config);
    if (ec.state) {
        if (config.n && *config.n != ec.state->dim()) {
            throw Error(ErrorCode::ShapeMismatch, "--N " + std::to_string(*config.n) + " but input matrix is " +
                                                      std::to_string(ec.state->dim()) + "x" +
                                                      std::to_string(ec.state->dim()));
        }
        ec.n = static_cast<int>(ec.state->dim());
    } else if (config.n) {
        ec.n = *config.n;
    } else {
        throw Error(ErrorCode::InvalidConfig, "either --N or --input is required");
    }
    if (!config.shape.empty()) ec.shape = FactorShape(config.shape);
    if (!config.q.empty()) ec.q_grid = config.q;
    ec.trials = config.trials.value_or(default_trials);
    ec.seed = config.seed;
    if (config.tolerance) {
        ec.tolerance = *config.tolerance;
        ec.nosig_tolerance = *config.tolerance;
    }
    ec.rank = config.rank;
    ec.partners = config.partners;
    ec.pad = config.pad;
    ec.unitaries = config.unitaries;
    return ec;
}

inline int run_reports_command(const Config &config, std::ostream &out, std::ostream &err,
                               std::size_t default_trials, OutputFormat default_format) {
    EnsembleConfig ec = ensemble_config(config, default_trials);
    EnsembleResult result = run_ensemble(ec);
    const OutputFormat format = config.format.value_or(default_format);
    with_output(config, out, [&](std::ostream &os) {
        write_reports(os, result.reports, format == OutputFormat::Text ? OutputFormat::Json : format);
    });
    write_summary(err, result.summary);
    if (result.summary.violations > 0) {
        err << "VIOLATION: " << result.summary.violations << " report(s) do not hold\n";
        return kExitViolation;
    }
    return kExitOk;
}

template <typename Fn>
int guarded(std::ostream &err, Fn &&fn) {
    try {
        return fn();
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

inline std::string render_real_matrix(const RealMatrix &m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << "  ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
    return os.str();
}

inline std::string render_complex_matrix(const ComplexMatrix &m) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << "  ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double re = m(i, j).real();
            double im = m(i, j).imag();
            // Avoid printing "-0.000000".
            if (std::abs(re) < 5e-7) re = 0.0;
            if (std::abs(im) < 5e-7) im = 0.0;
            os << (j ? "  " : "") << std::showpos << re << im << "i" << std::noshowpos;
        }
        os << '\n';
    }
    return os.str();
}

inline json real_matrix_json(const RealMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(static_cast<int>(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Accumulates the text and JSON renderings of a demo side by side.
struct DemoBundle {
    std::ostringstream text;
    json doc = json::object();
    std::vector<InequalityReport> reports;
    bool fixtures_ok = true;

    void matrix(const std::string &key, const std::string &title, const RealMatrix &m) {
        text << title << ":\n" << render_real_matrix(m);
        doc["matrices"][key] = real_matrix_json(m);
    }
    void state(const std::string &key, const std::string &title, const ComplexMatrix &m) {
        text << title << ":\n" << render_complex_matrix(m);
        doc["states"][key] = matrix_to_json(m);
    }
    void check(const std::string &key, const std::string &title, bool value, bool expected) {
        text << title << ": " << (value ? "yes" : "no") << (value == expected ? "" : "  [UNEXPECTED]") << '\n';
        doc["fixture_checks"][key] = value;
        if (value != expected) fixtures_ok = false;
    }
};

inline std::string labels_line(Spin spin) {
    std::string out;
    for (int i = 1; i <= spin.dimension(); ++i) {
        out += (i > 1 ? "  " : "") + std::to_string(i) + "<->" + projection_label(spin, i);
    }
    return out;
}

inline DensityMatrix demo_state(const Config &config, int n, SeededGenerator gen) {
    if (auto s = load_state(config)) {
        if (s->dim() != n) {
            throw Error(ErrorCode::ShapeMismatch,
                        "demo needs a " + std::to_string(n) + "x" + std::to_string(n) + " input matrix");
        }
        return *s;
    }
    return random_density(n, n, gen);
}

inline void demo_j52(const Config &config, DemoBundle &b) {
    const Spin spin{5};
    const FactorShape shape({2, 3});
    b.doc["demo"] = "j52";
    b.text << "spin 5/2, N = 6 = 2 x 3\nindex <-> spin projection: " << labels_line(spin) << "\n\n";
    for (int i = 1; i <= 6; ++i) b.doc["labels"].push_back(projection_label(spin, i));

    const RealMatrix m1 = marginalization_matrix(shape, {1}).matrix();
    const RealMatrix m2 = marginalization_matrix(shape, {2}).matrix();
    b.matrix("M1", "M(1), keep factor 1", m1);
    b.matrix("M2", "M(2), keep factor 2", m2);
    b.check("M1_matches_reference", "M(1) equals the reference 6x6 matrix", m1 == fixtures::spin52_first(), true);
    b.check("M2_matches_reference", "M(2) equals the reference 6x6 matrix", m2 == fixtures::spin52_second(), true);
    b.text << '\n';

    const SeededGenerator root(config.seed);
    const DensityMatrix rho = demo_state(config, 6, root.substream(0));
    b.state("rho", "rho", rho.matrix());
    b.state("rho1", "rho_1 (block traces)", reduce_density(rho, shape, {1}).matrix());
    b.state("rho2", "rho_2 (block sum)", reduce_density(rho, shape, {2}).matrix());

    SeededGenerator gen = root.substream(1);
    const UnitaryMatrix u1 = haar_unitary(2, gen);
    const UnitaryMatrix u2 = haar_unitary(3, gen);
    std::vector<UnitaryMatrix> partners2, partners1;
    for (std::size_t k = 0; k < config.partners; ++k) partners2.push_back(haar_unitary(3, gen));
    for (std::size_t k = 0; k < config.partners; ++k) partners1.push_back(haar_unitary(2, gen));

    const TomogramVector w = tomogram(rho, product_unitary({u1, u2}));
    const auto w1 = marginalization_matrix(shape, {1}).apply(w.probabilities());
    const auto w2 = marginalization_matrix(shape, {2}).apply(w.probabilities());
    b.text << "\ntomogram w(m|u1 x u2), w1 = M(1) w, w2 = M(2) w:\n";
    for (int i = 0; i < 6; ++i) {
        b.text << "  " << std::setw(5) << projection_label(spin, i + 1) << "  " << format_double(w[i]) << "  "
               << format_double(w1[i]) << "  " << format_double(w2[i]) << '\n';
    }
    b.doc["tomogram"] = {{"w", w.values()}, {"w1", w1}, {"w2", w2}};

    const double tol = config.tolerance.value_or(1e-10);
    auto first = check_no_signaling(rho, shape, u1, partners2, NoSignalingSide::First, tol);
    auto second = check_no_signaling(rho, shape, u2, partners1, NoSignalingSide::Second, tol);
    for (auto *r : {&first, &second}) {
        r->seed = config.seed;
        r->extra["unitary"] = std::string("product(haar)");
        b.reports.push_back(*r);
    }
    b.text << "\nno-signaling, w1 across " << config.partners << " factor-2 unitaries: max deviation "
           << format_double(first.lhs) << (first.holds ? "  PASS" : "  FAIL") << '\n';
    b.text << "no-signaling, w2 across " << config.partners << " factor-1 unitaries: max deviation "
           << format_double(second.lhs) << (second.holds ? "  PASS" : "  FAIL") << '\n';
}

inline void demo_j72(const Config &config, DemoBundle &b) {
    const Spin spin{7};
    const FactorShape shape({2, 2, 2});
    b.doc["demo"] = "j72";
    b.text << "spin 7/2, N = 8 = 2 x 2 x 2\nindex <-> spin projection: " << labels_line(spin) << "\n\n";
    for (int i = 1; i <= 8; ++i) b.doc["labels"].push_back(projection_label(spin, i));

    const RealMatrix m12 = marginalization_matrix(shape, {1, 2}).matrix();
    const RealMatrix m23 = marginalization_matrix(shape, {2, 3}).matrix();
    const RealMatrix m2 = marginalization_matrix(shape, {2}).matrix();
    const RealMatrix m1 = marginalization_matrix(shape, {1}).matrix();
    b.matrix("M12", "M(12), keep factors 1,2", m12);
    b.matrix("M23", "M(23), keep factors 2,3", m23);
    b.matrix("M2", "M(2), keep factor 2", m2);
    b.matrix("M12_listed", "M(12) as listed in the reference tables", fixtures::spin72_pair12_listed());
    b.check("M23_matches_reference", "M(23) equals the reference 8x8 matrix", m23 == fixtures::spin72_pair23(), true);
    b.check("M2_matches_reference", "M(2) equals the reference 8x8 matrix", m2 == fixtures::spin72_middle(), true);
    b.check("M12_matches_listed", "M(12) equals the listed reference 8x8 matrix",
            m12 == fixtures::spin72_pair12_listed(), false);
    b.check("M12_listed_is_keep1", "listed M(12) equals keep-factor-1 matrix",
            m1 == fixtures::spin72_pair12_listed(), true);
    b.text << "note: the listed M(12) sums blocks of four, so it marginalizes onto factor 1 only;\n"
              "      the (1,2) marginal used below has row supports {1,2},{3,4},{5,6},{7,8}.\n\n";

    const SeededGenerator root(config.seed);
    const DensityMatrix rho = demo_state(config, 8, root.substream(0));
    b.state("rho", "rho", rho.matrix());
    const ComplexMatrix rho2 = reduce_density(rho, shape, {2}).matrix();
    const ComplexMatrix rho2_elementwise = fixtures::spin72_middle_reduced_elementwise(rho.matrix());
    b.state("rho2", "rho_2 = reduce(rho, keep 2)", rho2);
    b.state("rho2_elementwise", "rho_2 from spin-label element formulas", rho2_elementwise);
    const double transpose_gap = max_abs(rho2_elementwise - rho2.transpose());
    b.check("rho2_elementwise_is_transpose", "element formulas give the transpose of reduce(rho, keep 2)",
            transpose_gap <= 1e-12, true);
    b.text << '\n';

    SeededGenerator gen = root.substream(1);
    const UnitaryMatrix u = haar_unitary(8, gen);
    const std::vector<UnitaryMatrix> locals{haar_unitary(2, gen), haar_unitary(2, gen), haar_unitary(2, gen)};
    const std::vector<double> qs = config.q.empty() ? std::vector<double>{1.0, 1.1, 1.5, 2.0, 3.0, 5.0} : config.q;
    const double tol = config.tolerance.value_or(kDefaultSlackTolerance);
    b.text << "q        SSA slack (global u)     MIXED slack (u1 x u2 x u3)\n";
    for (double qv : qs) {
        auto ssa = check_ssa_tomographic(rho, u, shape, qv, tol);
        auto mixed = check_mixed_inequality(rho, std::span<const UnitaryMatrix>(locals), shape, qv, tol);
        ssa.extra["unitary"] = std::string("haar");
        mixed.extra["unitary"] = std::string("product(haar)");
        b.text << std::left << std::setw(9) << format_double(qv) << std::setw(25)
               << (format_double(ssa.slack) + (ssa.holds ? "" : " FAIL")) << format_double(mixed.slack)
               << (mixed.holds ? "" : " FAIL") << std::right << '\n';
        for (auto *r : {&ssa, &mixed}) {
            r->seed = config.seed;
            b.reports.push_back(*r);
        }
    }
}

}  // namespace detail

inline int cmd_verify(const Config &config, std::ostream &out, std::ostream &err) {
    return detail::guarded(err, [&] {
        if (config.inequalities.size() != 1) {
            throw Error(ErrorCode::InvalidConfig, "verify needs exactly one --ineq");
        }
        return detail::run_reports_command(config, out, err, 1, OutputFormat::Json);
    });
}

inline int cmd_sweep(const Config &config, std::ostream &out, std::ostream &err) {
    return detail::guarded(err, [&] {
        if (config.inequalities.empty()) throw Error(ErrorCode::InvalidConfig, "sweep needs at least one --ineq");
        return detail::run_reports_command(config, out, err, 1, OutputFormat::Csv);
    });
}

inline int cmd_nosignal(const Config &config, std::ostream &out, std::ostream &err) {
    return detail::guarded(err, [&] {
        Config c = config;
        c.inequalities = {InequalityId::NoSignaling};
        EnsembleConfig ec = detail::ensemble_config(c, 1);
        EnsembleResult result = run_ensemble(ec);
        const OutputFormat format = c.format.value_or(OutputFormat::Json);
        detail::with_output(c, out, [&](std::ostream &os) {
            detail::write_reports(os, result.reports, format == OutputFormat::Text ? OutputFormat::Json : format);
        });
        double max_dev = 0.0;
        for (const auto &r : result.reports) max_dev = std::max(max_dev, r.lhs);
        err << "max deviation: " << format_double(max_dev) << (result.summary.violations ? "  FAIL" : "  PASS")
            << '\n';
        detail::write_summary(err, result.summary);
        return result.summary.violations ? kExitViolation : kExitOk;
    });
}

inline int cmd_demo(const Config &config, std::ostream &out, std::ostream &err) {
    return detail::guarded(err, [&] {
        detail::DemoBundle bundle;
        if (config.demo == "j52") {
            detail::demo_j52(config, bundle);
        } else if (config.demo == "j72") {
            detail::demo_j72(config, bundle);
        } else {
            throw Error(ErrorCode::InvalidConfig, "demo must be j52 or j72, got '" + config.demo + "'");
        }
        const EnsembleSummary summary = summarize(bundle.reports);
        const OutputFormat format = config.format.value_or(OutputFormat::Text);
        detail::with_output(config, out, [&](std::ostream &os) {
            if (format == OutputFormat::Csv) {
                detail::write_reports(os, bundle.reports, OutputFormat::Csv);
            } else if (format == OutputFormat::Json) {
                json reports = json::array();
                for (const auto &r : bundle.reports) reports.push_back(report_to_json(r));
                bundle.doc["reports"] = std::move(reports);
                os << bundle.doc.dump(2) << '\n';
            } else {
                os << bundle.text.str();
                os << "\nreports:\n";
                detail::write_reports(os, bundle.reports, OutputFormat::Json);
            }
        });
        detail::write_summary(err, summary);
        if (summary.violations > 0 || !bundle.fixtures_ok) return kExitViolation;
        return kExitOk;
    });
}

inline int run_command(const Config &config, std::ostream &out, std::ostream &err) {
    if (config.command == "verify") return cmd_verify(config, out, err);
    if (config.command == "sweep") return cmd_sweep(config, out, err);
    if (config.command == "nosignal") return cmd_nosignal(config, out, err);
    if (config.command == "demo") return cmd_demo(config, out, err);
    err << "error: unknown command '" << config.command << "'\n";
    return kExitError;
}

}  // namespace qtomo::cli

#endif
