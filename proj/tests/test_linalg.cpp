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

#include "qtomo/linalg.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qtomo/sampling.hpp"

using namespace qtomo;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
    RealVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v.cast<Complex>().asDiagonal();
}

ComplexMatrix random_hermitian(Eigen::Index n, SeededGenerator &gen) {
    ComplexMatrix g = gen.ginibre(n, n);
    return 0.5 * (g + g.adjoint());
}

template <typename Fn>
ErrorCode code_of(Fn &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception thrown";
    return ErrorCode::Io;
}

}  // namespace

TEST(linalg, eig_identity) {
    auto spec = eig_hermitian(ComplexMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(spec.eigenvalues(i), 1.0, 1e-14);
    EXPECT_LE(max_abs(spec.reconstruct() - ComplexMatrix::Identity(3, 3)), 1e-12);
}

TEST(linalg, eig_diagonal_sorted) {
    auto spec = eig_hermitian(diag({0.75, 0.25}));
    EXPECT_NEAR(spec.eigenvalues(0), 0.25, 1e-15);
    EXPECT_NEAR(spec.eigenvalues(1), 0.75, 1e-15);
}

TEST(linalg, eig_matches_characteristic_polynomial) {
    ComplexMatrix m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    auto [lo, hi] = oracle::eig2x2(0.5, 0.5, 0.5);
    EXPECT_NEAR(lo, 0.0, 1e-15);
    EXPECT_NEAR(hi, 1.0, 1e-15);
    auto spec = eig_hermitian(m);
    EXPECT_NEAR(spec.eigenvalues(0), lo, 1e-14);
    EXPECT_NEAR(spec.eigenvalues(1), hi, 1e-14);

    SeededGenerator gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        ComplexMatrix h = random_hermitian(2, gen);
        auto [a, b] = oracle::eig2x2(h(0, 0).real(), h(0, 1), h(1, 1).real());
        auto s = eig_hermitian(h);
        EXPECT_NEAR(s.eigenvalues(0), a, 1e-12);
        EXPECT_NEAR(s.eigenvalues(1), b, 1e-12);
    }
}

TEST(linalg, eig_round_trip_random) {
    SeededGenerator gen(3);
    for (int n = 1; n <= 16; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            ComplexMatrix h = random_hermitian(n, gen);
            auto spec = eig_hermitian(h);
            EXPECT_LE(max_abs(spec.reconstruct() - h), 1e-10) << "n=" << n;
            EXPECT_LE(max_abs(spec.eigenvectors * spec.eigenvectors.adjoint() - ComplexMatrix::Identity(n, n)),
                      1e-10);
            for (int i = 1; i < n; ++i) EXPECT_LE(spec.eigenvalues(i - 1), spec.eigenvalues(i));
        }
    }
}

TEST(linalg, eig_errors) {
    ComplexMatrix nh(2, 2);
    nh << 1, 1, 0, 1;
    EXPECT_EQ(code_of([&] { eig_hermitian(nh); }), ErrorCode::NotHermitian);
    EXPECT_EQ(code_of([&] { eig_hermitian(ComplexMatrix::Zero(2, 3)); }), ErrorCode::NotSquare);
}

TEST(linalg, kron_identity_and_blocks) {
    EXPECT_EQ(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), ComplexMatrix::Identity(6, 6));

    ComplexMatrix e11 = ComplexMatrix::Zero(2, 2);
    e11(0, 0) = 1.0;
    SeededGenerator gen(5);
    ComplexMatrix b = gen.ginibre(3, 3);
    ComplexMatrix k = kron(e11, b);
    EXPECT_EQ(k.topLeftCorner(3, 3), b);
    EXPECT_EQ(max_abs(k.bottomRows(3)), 0.0);
    EXPECT_EQ(max_abs(k.topRightCorner(3, 3)), 0.0);

    ComplexMatrix k2 = kron(gen.ginibre(2, 3), gen.ginibre(4, 5));
    EXPECT_EQ(k2.rows(), 8);
    EXPECT_EQ(k2.cols(), 15);
}

TEST(linalg, kron_row_major_entries) {
    SeededGenerator gen(6);
    ComplexMatrix a = gen.ginibre(2, 3);
    ComplexMatrix b = gen.ginibre(3, 2);
    ComplexMatrix k = kron(a, b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 2; ++c) EXPECT_EQ(k(i * 3 + r, j * 2 + c), a(i, j) * b(r, c));
}

TEST(linalg, kron_associative) {
    SeededGenerator gen(7);
    ComplexMatrix a = gen.ginibre(2, 3), b = gen.ginibre(3, 2), c = gen.ginibre(2, 2);
    ComplexMatrix left = kron(kron(a, b), c);
    ComplexMatrix right = kron(a, kron(b, c));
    ASSERT_EQ(left.rows(), right.rows());
    ASSERT_EQ(left.cols(), right.cols());
    EXPECT_LE(max_abs(left - right), 1e-12);
}

TEST(linalg, abs_squared_cases) {
    EXPECT_EQ(abs_squared(ComplexMatrix::Identity(3, 3)), RealMatrix::Identity(3, 3));
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    RealMatrix a = abs_squared(h);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(a(i, j), 0.5, 1e-15);
}

TEST(linalg, abs_squared_of_unitary_is_doubly_stochastic) {
    SeededGenerator gen(8);
    for (int n : {1, 2, 3, 6, 8, 12, 16}) {
        for (int t = 0; t < 10; ++t) {
            RealMatrix a = abs_squared(haar_unitary(n, gen).matrix());
            for (int i = 0; i < n; ++i) {
                EXPECT_NEAR(a.row(i).sum(), 1.0, 1e-12);
                EXPECT_NEAR(a.col(i).sum(), 1.0, 1e-12);
            }
        }
    }
}

TEST(linalg, validate_density_accepts_and_rejects) {
    EXPECT_NO_THROW(validate_density(ComplexMatrix::Identity(6, 6) / 6.0));

    try {
        validate_density(diag({0.5, 0.6}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::TraceNotOne);
        EXPECT_NEAR(*e.value(), 1.1, 1e-15);
    }
    try {
        validate_density(diag({1.5, -0.5}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPositiveSemidefinite);
        EXPECT_NEAR(*e.value(), -0.5, 1e-14);
    }
    ComplexMatrix nh(2, 2);
    nh << 0.5, Complex(0, 0.1), Complex(0, 0.1), 0.5;
    EXPECT_EQ(code_of([&] { validate_density(nh); }), ErrorCode::NotHermitian);
    EXPECT_EQ(code_of([&] { validate_density(ComplexMatrix::Zero(2, 3)); }), ErrorCode::NotSquare);
}

TEST(linalg, unitary_validation) {
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, 1;
    EXPECT_EQ(code_of([&] { UnitaryMatrix u(m); }), ErrorCode::NotUnitary);
    EXPECT_NO_THROW(UnitaryMatrix::identity(4));
}

TEST(linalg, matrix_q_power_cases) {
    auto half = validate_density(ComplexMatrix::Identity(2, 2) / 2.0);
    EXPECT_LE(max_abs(matrix_q_power(half, 2.0) - ComplexMatrix::Identity(2, 2) / 4.0), 1e-15);

    ComplexMatrix psi(3, 1);
    psi << Complex(1, 1), Complex(0, 2), 1;
    psi /= psi.norm();
    ComplexMatrix proj = psi * psi.adjoint();
    auto pure = validate_density(proj);
    for (double q : {1.0, 1.5, 2.0, 7.0}) EXPECT_LE(max_abs(matrix_q_power(pure, q) - proj), 1e-12) << q;

    auto d = validate_density(diag({0.25, 0.75}));
    ComplexMatrix p2 = matrix_q_power(d, 2.0);
    // scalar oracle: 0.25^2, 0.75^2
    EXPECT_NEAR(p2(0, 0).real(), 0.0625, 1e-15);
    EXPECT_NEAR(p2(1, 1).real(), 0.5625, 1e-15);
    EXPECT_NEAR(std::abs(p2(0, 1)), 0.0, 1e-15);

    EXPECT_EQ(code_of([&] { matrix_q_power(d, 0.5); }), ErrorCode::QOutOfRange);
}

TEST(linalg, matrix_q_power_q1_is_identity_map) {
    SeededGenerator gen(9);
    for (int n : {2, 5, 8}) {
        auto rho = random_density(n, n, gen);
        EXPECT_LE(max_abs(matrix_q_power(rho, 1.0) - rho.matrix()), 1e-12);
        ComplexMatrix p = matrix_q_power(rho, 2.5);
        EXPECT_LE(hermitian_residual(p), 1e-12);
        double trace = 0.0;
        for (double l : rho.spectrum().eigenvalues) trace += l > 0 ? std::pow(l, 2.5) : 0.0;
        EXPECT_NEAR(p.trace().real(), trace, 1e-12);
    }
}
