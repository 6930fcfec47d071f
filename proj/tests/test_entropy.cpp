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

#include "qtomo/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qtomo/sampling.hpp"

using namespace qtomo;

namespace {

const std::vector<double> kQGrid{1.0, 1.1, 1.5, 2.0, 3.0, 5.0};

std::vector<double> random_probabilities(std::size_t n, SeededGenerator &gen) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (auto &x : p) sum += (x = -std::log(gen.uniform(1e-300, 1.0)));
    for (auto &x : p) x /= sum;
    return p;
}

}  // namespace

TEST(entropy, deterministic_distribution_is_zero) {
    for (double q : kQGrid) EXPECT_EQ(tsallis_classical(std::vector<double>{1, 0, 0}, q), 0.0) << q;
}

TEST(entropy, uniform_closed_forms) {
    EXPECT_NEAR(tsallis_classical(std::vector<double>{0.5, 0.5}, 2.0), 0.5, 1e-15);
    EXPECT_NEAR(shannon(std::vector<double>(4, 0.25)), std::log(4.0), 1e-15);
    for (int n : {2, 3, 6, 8, 16}) {
        std::vector<double> u(static_cast<std::size_t>(n), 1.0 / n);
        for (double q : kQGrid) {
            double expect = q == 1.0 ? std::log(double(n)) : oracle::tsallis_uniform(n, q);
            EXPECT_NEAR(tsallis_classical(u, q), expect, 1e-13) << n << " " << q;
        }
    }
}

TEST(entropy, matches_direct_sum) {
    SeededGenerator gen(51);
    for (int t = 0; t < 200; ++t) {
        auto p = random_probabilities(2 + t % 12, gen);
        for (double q : {1.1, 1.5, 2.0, 3.0, 5.0}) EXPECT_NEAR(tsallis_classical(p, q), oracle::tsallis_direct(p, q), 1e-13);
        EXPECT_NEAR(shannon(p), oracle::shannon_direct(p), 1e-13);
    }
}

TEST(entropy, quantum_closed_forms) {
    auto mixed6 = validate_density(ComplexMatrix::Identity(6, 6) / 6.0);
    EXPECT_NEAR(tsallis_quantum(mixed6, 2.0), 5.0 / 6.0, 1e-14);
    EXPECT_NEAR(von_neumann(mixed6), std::log(6.0), 1e-14);

    RealVector d(2);
    d << 0.75, 0.25;
    auto rho = validate_density(d.cast<Complex>().asDiagonal().toDenseMatrix());
    EXPECT_NEAR(tsallis_quantum(rho, 2.0), 0.375, 1e-15);

    SeededGenerator gen(52);
    auto pure = random_pure(5, gen);
    for (double q : kQGrid) EXPECT_NEAR(tsallis_quantum(pure, q), 0.0, 1e-12) << q;
}

TEST(entropy, quantum_equals_classical_on_spectrum) {
    SeededGenerator gen(53);
    for (int t = 0; t < 50; ++t) {
        auto rho = random_density(6, 1 + t % 6, gen);
        RealVector spec = rho.spectrum().eigenvalues.cwiseMax(0.0);
        std::vector<double> p(spec.data(), spec.data() + spec.size());
        for (double q : {1.5, 2.0, 5.0}) EXPECT_NEAR(tsallis_quantum(rho, q), oracle::tsallis_direct(p, q), 1e-12);
    }
}

TEST(entropy, shannon_limit_window) {
    std::vector<double> p{0.2, 0.3, 0.5};
    double h = shannon(p);
    EXPECT_EQ(tsallis_classical(p, 1.0), h);
    EXPECT_EQ(tsallis_classical(p, 1.0 + 1e-9), h);
    EXPECT_TRUE(QParameter(1.0 + 1e-8).shannon_limit());
    EXPECT_FALSE(QParameter(1.0 + 2e-8).shannon_limit());
}

TEST(entropy, continuity_near_one) {
    // S_q = S_1 - (q-1)/2 sum p ln^2 p + O((q-1)^2).
    SeededGenerator gen(54);
    for (int t = 0; t < 50; ++t) {
        auto p = random_probabilities(2 + t % 8, gen);
        double second = 0.0;
        for (double x : p) second += x * std::log(x) * std::log(x);
        for (double delta : {1e-3, 1e-4, 1e-6}) {
            double gap = std::abs(tsallis_classical(p, 1.0 + delta) - shannon(p));
            EXPECT_LE(gap, 0.5 * delta * second + 1e-9) << delta;
        }
    }
}

TEST(entropy, q_out_of_range) {
    std::vector<double> p{0.5, 0.5};
    for (double q : {0.5, 0.999, -1.0, std::nan(""), double(INFINITY)}) {
        try {
            tsallis_classical(p, q);
            FAIL() << q;
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::QOutOfRange);
        }
    }
}

TEST(entropy, invalid_probabilities) {
    EXPECT_THROW(shannon(std::vector<double>{0.5, 0.6}), Error);
    EXPECT_THROW(shannon(std::vector<double>{1.5, -0.5}), Error);
    EXPECT_THROW(shannon(std::vector<double>{}), Error);
    EXPECT_NO_THROW(shannon(std::vector<double>{1.0, -1e-13}));
}

TEST(entropy, bounds) {
    SeededGenerator gen(55);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + t % 10;
        auto p = random_probabilities(static_cast<std::size_t>(n), gen);
        for (double q : kQGrid) {
            double s = tsallis_classical(p, q);
            double max = q == 1.0 ? std::log(double(n)) : oracle::tsallis_uniform(n, q);
            EXPECT_GE(s, -1e-15);
            EXPECT_LE(s, max + 1e-12);
        }
    }
}

TEST(entropy, unitary_invariance_of_quantum_entropy) {
    SeededGenerator gen(56);
    for (int t = 0; t < 30; ++t) {
        auto rho = random_density(5, 1 + t % 5, gen);
        auto v = haar_unitary(5, gen);
        auto rotated = validate_density(v.matrix() * rho.matrix() * v.adjoint().matrix());
        for (double q : kQGrid) EXPECT_NEAR(tsallis_quantum(rho, q), tsallis_quantum(rotated, q), 1e-11);
    }
}

TEST(entropy, tomographic_entropy_dominates_quantum) {
    // The diagonal of rho in any basis is majorized by its spectrum.
    SeededGenerator gen(57);
    for (int t = 0; t < 100; ++t) {
        auto rho = random_density(6, 1 + t % 6, gen);
        auto w = tomogram(rho, haar_unitary(6, gen));
        for (double q : kQGrid) EXPECT_GE(tsallis_classical(w, q), tsallis_quantum(rho, q) - 1e-12);
    }
}

TEST(entropy, schur_concavity_under_mixing) {
    // Averaging with a permutation (a doubly stochastic step) cannot lower the entropy.
    SeededGenerator gen(58);
    for (int t = 0; t < 100; ++t) {
        auto p = random_probabilities(6, gen);
        std::vector<double> r(p.rbegin(), p.rend());
        double lambda = gen.uniform(0.0, 1.0);
        std::vector<double> mix(6);
        for (std::size_t i = 0; i < 6; ++i) mix[i] = lambda * p[i] + (1 - lambda) * r[i];
        for (double q : kQGrid) EXPECT_GE(tsallis_classical(mix, q), tsallis_classical(p, q) - 1e-13);
    }
}

TEST(entropy, zero_padding_is_exact) {
    SeededGenerator gen(59);
    for (int t = 0; t < 20; ++t) {
        auto p = random_probabilities(5, gen);
        auto padded = p;
        padded.resize(8, 0.0);
        for (double q : kQGrid) EXPECT_EQ(tsallis_classical(p, q), tsallis_classical(padded, q));
    }
}
