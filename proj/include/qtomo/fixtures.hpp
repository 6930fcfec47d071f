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

// Hand-entered marginalization matrices of the spin-5/2 (2 x 3) and spin-7/2 (2 x 2 x 2)
// reference constructions. These are data, not derived: tests compare them against
// `marginalization_matrix`.

#ifndef QTOMO_FIXTURES_HPP
#define QTOMO_FIXTURES_HPP

#include <initializer_list>

#include "qtomo/linalg.hpp"
#include "qtomo/tomography.hpp"

namespace qtomo::fixtures {

inline RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    RealMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto &row : rows) {
        Eigen::Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

/// Spin 5/2 split as qubit x qutrit: marginal onto the first factor.
inline RealMatrix spin52_first() {
    return from_rows({{1, 1, 1, 0, 0, 0},
                      {0, 0, 0, 1, 1, 1},
                      {0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0}});
}

/// Spin 5/2 split as qubit x qutrit: marginal onto the second factor.
inline RealMatrix spin52_second() {
    return from_rows({{1, 0, 0, 1, 0, 0},
                      {0, 1, 0, 0, 1, 0},
                      {0, 0, 1, 0, 0, 1},
                      {0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0}});
}

/// Spin 7/2 "(12)" matrix exactly as listed in the reference tables. Its rows sum blocks of
/// four, i.e. it keeps only factor 1 of (2, 2, 2); the (1, 2) marginal needs row supports
/// {1,2},{3,4},{5,6},{7,8}.
/// Kept to document that mismatch.
inline RealMatrix spin72_pair12_listed() {
    return from_rows({{1, 1, 1, 1, 0, 0, 0, 0},
                      {0, 0, 0, 0, 1, 1, 1, 1},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0}});
}

/// Spin 7/2 "(23)" matrix, block form [1_4 1_4; 0_4 0_4].
inline RealMatrix spin72_pair23() {
    RealMatrix m = RealMatrix::Zero(8, 8);
    m.block(0, 0, 4, 4) = RealMatrix::Identity(4, 4);
    m.block(0, 4, 4, 4) = RealMatrix::Identity(4, 4);
    return m;
}

/// Spin 7/2 middle-factor matrix.
inline RealMatrix spin72_middle() {
    return from_rows({{1, 1, 0, 0, 1, 1, 0, 0},
                      {0, 0, 1, 1, 0, 0, 1, 1},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 0}});
}

/// 1-based basis index of spin projection m (given as 2m) under the descending labeling
/// index 1 <-> m = +j.
inline int index_of_projection(Spin spin, int twice_m) { return (spin.two_j - twice_m) / 2 + 1; }

/// Middle-factor reduced matrix of a spin-7/2 state written element by element in spin labels:
///   (r)_11 = rho(7/2,7/2) + rho(5/2,5/2) + rho(-1/2,-1/2) + rho(-3/2,-3/2),  (r)_22 = 1 - (r)_11,
///   (r)_12 = conj((r)_21) = rho(-7/2,-3/2) + rho(-5/2,-1/2) + rho(1/2,5/2) + rho(3/2,7/2).
/// Under the descending labeling this is the transpose of reduce_density(rho, (2,2,2), {2}),
/// which has the same spectrum.
inline ComplexMatrix spin72_middle_reduced_elementwise(const ComplexMatrix &rho) {
    const Spin spin{7};
    auto at = [&](int twice_a, int twice_b) {
        return rho(index_of_projection(spin, twice_a) - 1, index_of_projection(spin, twice_b) - 1);
    };
    ComplexMatrix r(2, 2);
    r(0, 0) = at(7, 7) + at(5, 5) + at(-1, -1) + at(-3, -3);
    r(1, 1) = Complex(1.0, 0.0) - r(0, 0);
    r(0, 1) = at(-7, -3) + at(-5, -1) + at(1, 5) + at(3, 7);
    r(1, 0) = std::conj(r(0, 1));
    return r;
}

}  // namespace qtomo::fixtures

#endif
