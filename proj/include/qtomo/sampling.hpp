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

#ifndef QTOMO_SAMPLING_HPP
#define QTOMO_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "qtomo/error.hpp"
#include "qtomo/linalg.hpp"

namespace qtomo {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic random stream keyed by a 64-bit seed. Independent substreams are derived
/// from (key, index) so trials can be sampled in any order or concurrently.
class SeededGenerator {
   public:
    static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64";

    explicit SeededGenerator(std::uint64_t seed) : seed_(seed), key_(splitmix64(seed)), engine_(key_) {}

    SeededGenerator substream(std::uint64_t index) const {
        SeededGenerator g(seed_);
        g.key_ = splitmix64(key_ ^ splitmix64(index + 0xD1B54A32D192ED03ULL));
        g.engine_.seed(g.key_);
        return g;
    }

    std::uint64_t seed() const { return seed_; }
    std::string_view algorithm() const { return kAlgorithm; }

    double normal() { return normal_(engine_); }

    /// Real and imaginary parts independent N(0, 1).
    Complex complex_normal() {
        double re = normal();
        double im = normal();
        return {re, im};
    }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols) {
        ComplexMatrix g(rows, cols);
        // Fill in row-major order so the stream layout does not depend on Eigen's storage order.
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = complex_normal();
        }
        return g;
    }

   private:
    std::uint64_t seed_;
    std::uint64_t key_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of diag(R) moved into Q.
inline UnitaryMatrix haar_unitary(Eigen::Index n, SeededGenerator &gen) {
    if (n < 1) throw Error(ErrorCode::InvalidConfig, "unitary dimension must be >= 1");
    ComplexMatrix z = gen.ginibre(n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        double mag = std::abs(r(j, j));
        Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return UnitaryMatrix(std::move(q));
}

/// G G^dagger / Tr(G G^dagger) for an n x rank Ginibre G (Hilbert-Schmidt measure when rank = n).
inline DensityMatrix random_density(Eigen::Index n, Eigen::Index rank, SeededGenerator &gen) {
    if (n < 1 || rank < 1 || rank > n) {
        throw Error(ErrorCode::BadRank,
                    "rank " + std::to_string(rank) + " must lie in [1, " + std::to_string(n) + "]",
                    static_cast<double>(rank));
    }
    ComplexMatrix g = gen.ginibre(n, rank);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return validate_density(rho);
}

inline DensityMatrix random_pure(Eigen::Index n, SeededGenerator &gen) {
    if (n < 1) throw Error(ErrorCode::InvalidConfig, "dimension must be >= 1");
    ComplexMatrix psi = gen.ginibre(n, 1);
    psi /= psi.norm();
    return validate_density(psi * psi.adjoint());
}

}  // namespace qtomo

#endif
