// Copyright 2026 The photon_budget Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Shared scalar numerics: log-space probability arithmetic, Poisson and
 * binomial factors, a small Hermitian eigensolver front end and the seeded
 * random stream used by every Monte-Carlo and property sweep.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>

#include <Eigen/Dense>

namespace photon_budget {

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when a numerical routine fails after its preconditions held.
class InternalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool condition, const char *message) {
    if (!condition) {
        throw DomainError(message);
    }
}
} // namespace detail

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/**
 * Natural logarithm of a probability or weight. Values are kept in log space
 * end to end; `linear()` is the only conversion point.
 */
class LogProb {
  public:
    constexpr LogProb() = default;
    constexpr explicit LogProb(double log_value) : value_(log_value) {}

    static constexpr LogProb zero() { return LogProb(kNegInf); }
    static constexpr LogProb one() { return LogProb(0.0); }
    static LogProb from_linear(double p) {
        return LogProb(p > 0.0 ? std::log(p) : kNegInf);
    }

    [[nodiscard]] constexpr double value() const { return value_; }
    [[nodiscard]] double linear() const { return std::exp(value_); }
    [[nodiscard]] bool is_zero() const { return value_ == kNegInf; }

    friend LogProb operator*(LogProb a, LogProb b) {
        return LogProb(a.value_ + b.value_);
    }
    friend LogProb operator/(LogProb a, LogProb b) {
        return LogProb(a.value_ - b.value_);
    }
    /// log(e^a + e^b) with the larger term factored out.
    friend LogProb operator+(LogProb a, LogProb b) {
        const double hi = std::max(a.value_, b.value_);
        const double lo = std::min(a.value_, b.value_);
        if (hi == kNegInf) {
            return zero();
        }
        return LogProb(hi + std::log1p(std::exp(lo - hi)));
    }
    LogProb &operator+=(LogProb other) { return *this = *this + other; }
    friend auto operator<=>(LogProb a, LogProb b) = default;

  private:
    double value_ = kNegInf;
};

/// Two-pass log-sum-exp over raw log values.
inline LogProb log_sum_exp(std::span<const double> logs) {
    double hi = kNegInf;
    for (double v : logs) {
        hi = std::max(hi, v);
    }
    if (hi == kNegInf) {
        return LogProb::zero();
    }
    if (hi == std::numeric_limits<double>::infinity()) {
        return LogProb(hi);
    }
    double acc = 0.0;
    for (double v : logs) {
        acc += std::exp(v - hi);
    }
    return LogProb(hi + std::log(acc));
}

namespace detail {

// lgamma(x+1) - [(x+1/2) ln x - x + ln(2 pi)/2] for x >= 30, asymptotic series.
inline double stirling_error(double x) {
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    const double x2 = 1.0 / (x * x);
    return (s0 - (s1 - (s2 - (s3 - s4 * x2) * x2) * x2) * x2) / x;
}

} // namespace detail

/**
 * ln C(n, k).
 *
 * Small min(k, n-k) sums ln((n-k'+i)/i), every term >= ln 2. Otherwise the
 * entropy form k ln(n/k) + (n-k) ln(n/(n-k)) plus Stirling corrections is
 * used, which has no cancellation between large lgamma values.
 */
inline LogProb log_binomial(std::uint64_t n, std::uint64_t k) {
    detail::require(k <= n, "log_binomial: k must not exceed n");
    const std::uint64_t kk = std::min(k, n - k);
    if (kk == 0) {
        return LogProb::one();
    }
    if (kk <= 30) {
        const double base = static_cast<double>(n - kk);
        double acc = 0.0;
        for (std::uint64_t i = 1; i <= kk; ++i) {
            const double di = static_cast<double>(i);
            acc += std::log((base + di) / di);
        }
        return LogProb(acc);
    }
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(kk);
    const double dr = static_cast<double>(n - kk);
    const double entropy = dk * std::log(dn / dk) - dr * std::log1p(-dk / dn);
    const double prefactor =
        -0.5 * std::log(2.0 * std::numbers::pi * dk * (dr / dn));
    const double corrections = detail::stirling_error(dn) -
                               detail::stirling_error(dk) -
                               detail::stirling_error(dr);
    return LogProb(entropy + prefactor + corrections);
}

/// ln(e^{-E} E^n / n!). The E = 0, n = 0 corner is exactly zero.
inline LogProb poisson_pmf_log(double mean, std::uint64_t n) {
    detail::require(mean >= 0.0 && std::isfinite(mean),
                    "poisson_pmf_log: mean must be finite and >= 0");
    if (n == 0) {
        return LogProb(-mean);
    }
    if (mean == 0.0) {
        return LogProb::zero();
    }
    const double dn = static_cast<double>(n);
    return LogProb(-mean + dn * std::log(mean) - std::lgamma(dn + 1.0));
}

//=========================================================================
// Hermitian eigenproblems
//=========================================================================

/// Largest dimension accepted by `eigh`.
constexpr Eigen::Index kMaxEighDim = 512;

template <typename Scalar> struct EigenDecomposition {
    /// Descending.
    RealVector eigenvalues;
    /// Orthonormal columns, column j pairs with eigenvalues(j).
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors;
};

template <typename Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived> &a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/**
 * Eigendecomposition of a Hermitian (or real symmetric) matrix.
 *
 * Asymmetry larger than 1e-12 (relative to max(1, max|a_ij|)) is rejected.
 * Eigenvalues come back sorted descending.
 */
template <typename Derived>
auto eigh(const Eigen::MatrixBase<Derived> &a) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    detail::require(a.rows() == a.cols() && a.rows() > 0,
                    "eigh: matrix must be square and non-empty");
    detail::require(a.rows() <= kMaxEighDim, "eigh: dimension exceeds 512");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    detail::require(hermitian_defect(a) <= 1e-12 * scale,
                    "eigh: matrix is not Hermitian");

    const Matrix sym = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw InternalError("eigh: eigensolver did not converge");
    }
    const Eigen::Index n = sym.rows();
    EigenDecomposition<Scalar> out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.eigenvalues(j) = solver.eigenvalues()(n - 1 - j);
        out.eigenvectors.col(j) = solver.eigenvectors().col(n - 1 - j);
    }
    return out;
}

/// Sum of the k largest eigenvalues.
inline double top_eigenvalue_sum(const RealVector &descending, Eigen::Index k) {
    return descending.head(k).sum();
}

/// Trace norm of a Hermitian matrix via its spectrum.
inline double trace_norm(const ComplexMatrix &a) {
    return eigh(a).eigenvalues.cwiseAbs().sum();
}

//=========================================================================
// Seeded randomness
//=========================================================================

namespace detail {
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace detail

/**
 * Seeded 64-bit Mersenne Twister. `stream(i)` derives an independent child
 * generator from (seed, i) through splitmix64, so sharded work reproduces
 * exactly for a fixed shard layout.
 */
class Rng {
  public:
    using result_type = std::mt19937_64::result_type;

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    [[nodiscard]] Rng stream(std::uint64_t index) const {
        return Rng(detail::splitmix64(seed_ ^ detail::splitmix64(index + 1)));
    }

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(*this);
    }
    double normal() { return std::normal_distribution<double>()(*this); }
    std::uint64_t uniform_index(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(*this);
    }

  private:
    static std::uint64_t mix(std::uint64_t seed) {
        return detail::splitmix64(seed);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Worker cap: PHOTON_BUDGET_THREADS if set and positive, else hardware count.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("PHOTON_BUDGET_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return hw;
}

//=========================================================================
// Random linear-algebra instances (shared by sweeps and tests)
//=========================================================================

inline ComplexVector random_unit_vector(Rng &rng, Eigen::Index dim) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = {rng.normal(), rng.normal()};
    }
    return v / v.norm();
}

/// Ginibre-distributed density matrix of the given rank (rank <= dim).
inline ComplexMatrix random_density(Rng &rng, Eigen::Index dim,
                                    Eigen::Index rank) {
    ComplexMatrix g(dim, rank);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < rank; ++j) {
            g(i, j) = {rng.normal(), rng.normal()};
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) / 2.0;
}

/// Haar-random unitary via QR with the phase correction on R's diagonal.
inline ComplexMatrix random_unitary(Rng &rng, Eigen::Index dim) {
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = {rng.normal(), rng.normal()};
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

} // namespace photon_budget
