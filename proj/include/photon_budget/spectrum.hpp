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
 * Spectrum of unitarily invariant mixtures of N-mode coherent states.
 *
 * An invariant input law on {|alpha|^2 <= E} is a radial law on [0, sqrt(E)]
 * times the uniform law on the sphere. Averaging over the sphere leaves
 *
 *     sigma = sum_n lambda_n Pi_{n,N},
 *     lambda_n = w_n / C(N+n-1, N-1),  w_n = int e^{-r^2} r^{2n}/n! dP(r),
 *
 * where Pi_{n,N} projects onto total photon number n. Everything here is an
 * exact scalar sum over n; no matrix is ever formed.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "capacity.hpp"
#include "loglaw.hpp"
#include "numerics.hpp"

namespace photon_budget {

struct RadialAtom {
    double radius;
    double weight;
};

/// Discrete radial law with atoms inside [0, sqrt(E)].
class RadialMixture {
  public:
    RadialMixture(std::vector<RadialAtom> atoms, EnergyBudget budget)
        : atoms_(std::move(atoms)), budget_(budget) {
        detail::require(!atoms_.empty(), "RadialMixture: at least one atom required");
        const double max_radius = std::sqrt(budget_.value());
        double total = 0.0;
        for (const auto &a : atoms_) {
            detail::require(a.radius >= 0.0, "RadialMixture: radius must be >= 0");
            detail::require(a.radius <= max_radius * (1.0 + 1e-12),
                            "RadialMixture: radius exceeds sqrt(E)");
            detail::require(a.weight > 0.0, "RadialMixture: weight must be > 0");
            total += a.weight;
        }
        detail::require(std::abs(total - 1.0) <= 1e-12,
                        "RadialMixture: weights must sum to 1");
    }

    /// Point mass at sqrt(E).
    static RadialMixture delta(EnergyBudget budget) {
        return RadialMixture({{std::sqrt(budget.value()), 1.0}}, budget);
    }

    [[nodiscard]] const std::vector<RadialAtom> &atoms() const { return atoms_; }
    [[nodiscard]] EnergyBudget budget() const { return budget_; }

    [[nodiscard]] double max_energy() const {
        double r = 0.0;
        for (const auto &a : atoms_) {
            r = std::max(r, a.radius);
        }
        return r * r;
    }

  private:
    std::vector<RadialAtom> atoms_;
    EnergyBudget budget_;
};

inline LogProb block_log_weight(std::uint64_t n, const RadialMixture &mix) {
    LogProb acc = LogProb::zero();
    for (const auto &a : mix.atoms()) {
        acc += LogProb(std::log(a.weight)) * poisson_pmf_log(a.radius * a.radius, n);
    }
    return acc;
}

/// sum_k q_k e^{-r_k^2} r_k^{2n} / n!.
inline double block_weight(std::uint64_t n, const RadialMixture &mix) {
    return block_log_weight(n, mix).linear();
}

/// ln C(N+n-1, N-1), the dimension of the n-photon sector of N modes.
inline LogProb block_log_multiplicity(std::uint64_t n, std::uint64_t modes) {
    detail::require(modes >= 1, "block_log_multiplicity: N must be >= 1");
    return log_binomial(modes + n - 1, modes - 1);
}

/// ln lambda_n; -infinity when the block weight vanishes.
inline LogProb block_log_eigenvalue(std::uint64_t n, std::uint64_t modes,
                                    const RadialMixture &mix) {
    const LogProb w = block_log_weight(n, mix);
    if (w.is_zero()) {
        return w;
    }
    return w / block_log_multiplicity(n, modes);
}

struct SpectralBlock {
    std::uint64_t n;
    double weight;
    LogProb log_eigenvalue;
    LogProb log_multiplicity;
};

constexpr double kDefaultSpectralTolerance = 1e-12;

/// Smallest n with P(X > n) < tol for X ~ Poisson(max r_k^2).
inline std::uint64_t truncation_order(const RadialMixture &mix,
                                      double tol = kDefaultSpectralTolerance) {
    detail::require(tol > 0.0, "truncation_order: tol must be > 0");
    const EnergyBudget e_max(mix.max_energy());
    if (e_max.value() == 0.0) {
        return 0;
    }
    // Bracket by doubling, then bisect; the tail is decreasing in n.
    const double log_tol = std::log(tol);
    std::uint64_t hi = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(e_max.value())));
    while (poisson_upper_tail_log(e_max, hi).value() >= log_tol) {
        hi *= 2;
    }
    std::uint64_t lo = 0;
    if (poisson_upper_tail_log(e_max, 0).value() < log_tol) {
        return 0;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (poisson_upper_tail_log(e_max, mid).value() < log_tol) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

/// Blocks n = 0..truncation_order(mix, tol).
inline std::vector<SpectralBlock> spectral_blocks(std::uint64_t modes,
                                                  const RadialMixture &mix,
                                                  double tol = kDefaultSpectralTolerance) {
    const std::uint64_t n_max = truncation_order(mix, tol);
    std::vector<SpectralBlock> blocks;
    blocks.reserve(n_max + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        const LogProb w = block_log_weight(n, mix);
        const LogProb mult = block_log_multiplicity(n, modes);
        blocks.push_back({n, w.linear(), w.is_zero() ? w : w / mult, mult});
    }
    return blocks;
}

/// -ln(lambda) / ln N <= c, the event defining the spectral CDF.
inline bool below_level(LogProb log_eigenvalue, double c, std::uint64_t modes) {
    if (log_eigenvalue.is_zero()) {
        return false;
    }
    return -log_eigenvalue.value() / std::log(static_cast<double>(modes)) <= c;
}

/**
 * Tr sigma {-(1/ln N) ln sigma <= c}, summed in increasing n over the
 * truncated blocks.
 */
inline double spectral_cdf(double c, std::uint64_t modes, const RadialMixture &mix,
                           double tol = kDefaultSpectralTolerance) {
    detail::require(modes >= 2, "spectral_cdf: N must be >= 2");
    if (c < 0.0) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto &b : spectral_blocks(modes, mix, tol)) {
        if (below_level(b.log_eigenvalue, c, modes)) {
            acc += b.weight;
        }
    }
    return std::min(acc, 1.0);
}

namespace detail {
inline void require_non_integer(double c, const char *message) {
    require(std::isfinite(c) && c != std::floor(c), message);
}
} // namespace detail

struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Slack for comparisons between sums of the same block weights.
constexpr double kBlockSumSlack = 1e-12;

/**
 * spectral_cdf(c) <= sum_{n <= floor(c)} w_n for non-integer c > 0: no
 * block above the integer part of the level can enter the event.
 */
inline BoundReport upper_bound_check(double c, std::uint64_t modes,
                                     const RadialMixture &mix) {
    detail::require_non_integer(c, "upper_bound_check: c must not be an integer");
    detail::require(c > 0.0, "upper_bound_check: c must be > 0");
    BoundReport r;
    r.lhs = spectral_cdf(c, modes, mix);
    const auto m = static_cast<std::uint64_t>(std::floor(c));
    for (std::uint64_t n = 0; n <= m; ++n) {
        r.rhs += block_weight(n, mix);
    }
    r.holds = r.lhs <= r.rhs + kBlockSumSlack;
    return r;
}

/// ln L_n(N) = (E + ln n! + n ln(1 + (n-1)/N) + (n - c) ln N) / n.
inline double log_radius_cap(std::uint64_t n, std::uint64_t modes, double c,
                             EnergyBudget e) {
    detail::require(n >= 1, "log_radius_cap: n must be >= 1");
    const double dn = static_cast<double>(n);
    const double dN = static_cast<double>(modes);
    return (e.value() + std::lgamma(dn + 1.0) + dn * std::log1p((dn - 1.0) / dN) +
            (dn - c) * std::log(dN)) /
           dn;
}

struct LowerBoundReport {
    /// spectral_cdf(c, N, mix).
    double spectral = 0.0;
    /// sum_{n <= floor(c)} w_n.
    double head_sum = 0.0;
    /// max_{1 <= n <= floor(c)} (1 - exp(-L_n(N))), 0 for c < 1.
    double deficit_cap = 0.0;
    bool holds = false;
};

/**
 * Finite-N lower bound: for non-integer c and N >= e^{E/c},
 * head_sum - spectral <= max_n (1 - e^{-L_n(N)}).
 */
inline LowerBoundReport lower_bound_check(double c, std::uint64_t modes,
                                          const RadialMixture &mix) {
    detail::require_non_integer(c, "lower_bound_check: c must not be an integer");
    detail::require(c > 0.0, "lower_bound_check: c must be > 0");
    const EnergyBudget e = mix.budget();
    detail::require(std::log(static_cast<double>(modes)) >= e.value() / c,
                    "lower_bound_check: requires N >= e^{E/c}");
    LowerBoundReport r;
    r.spectral = spectral_cdf(c, modes, mix);
    const auto m = static_cast<std::uint64_t>(std::floor(c));
    for (std::uint64_t n = 0; n <= m; ++n) {
        r.head_sum += block_weight(n, mix);
    }
    for (std::uint64_t n = 1; n <= m; ++n) {
        const double cap = -std::expm1(-std::exp(log_radius_cap(n, modes, c, e)));
        r.deficit_cap = std::max(r.deficit_cap, cap);
    }
    r.holds = r.head_sum - r.spectral <= r.deficit_cap + kBlockSumSlack;
    return r;
}

struct SandwichReport {
    /// Smallest n >= 1 where lambda_n > N^{-n}, if any.
    std::uint64_t first_violation = 0;
    /// min_n ( -ln(lambda_n)/ln N - n ) over n = 1..n_max.
    double worst_margin = 0.0;
    /// lambda_n <= N^{-n} for every n = 1..n_max.
    bool holds = false;
    /// lambda_n <= n! w_n N^{-n}, i.e. C(N+n-1, n) >= N^n / n!, for every n.
    bool corrected_holds = false;
};

/**
 * Compares every block eigenvalue against N^{-n}.
 *
 * lambda_n <= N^{-n} is equivalent to n! w_n <= prod_{i<n} (1 + i/N), which
 * holds for every n when all atoms satisfy r^2 <= 1 but can fail otherwise
 * (e.g. a point mass at r^2 = 2, n = 3, N = 1000). The corrected bound
 * lambda_n <= n! w_n N^{-n} holds for every mixture.
 */
inline SandwichReport eigenvalue_sandwich_check(std::uint64_t modes,
                                                const RadialMixture &mix,
                                                double tol = kDefaultSpectralTolerance) {
    detail::require(modes >= 2, "eigenvalue_sandwich_check: N must be >= 2");
    SandwichReport r;
    r.holds = true;
    r.corrected_holds = true;
    r.worst_margin = std::numeric_limits<double>::infinity();
    const double log_n = std::log(static_cast<double>(modes));
    for (const auto &b : spectral_blocks(modes, mix, tol)) {
        if (b.n == 0 || b.log_eigenvalue.is_zero()) {
            continue;
        }
        const double dn = static_cast<double>(b.n);
        const double margin = -b.log_eigenvalue.value() / log_n - dn;
        r.worst_margin = std::min(r.worst_margin, margin);
        if (margin < -1e-12 && r.holds) {
            r.holds = false;
            r.first_violation = b.n;
        }
        const double corrected = std::log(b.weight) + std::lgamma(dn + 1.0) - dn * log_n;
        if (b.log_eigenvalue.value() > corrected + 1e-12 * std::abs(corrected)) {
            r.corrected_holds = false;
        }
    }
    return r;
}

/**
 * |spectral_cdf(c, N) - P(X <= floor(c))| for the point mass at sqrt(E),
 * one entry per N.
 */
inline std::vector<double> limit_convergence(double c, EnergyBudget e,
                                             const std::vector<std::uint64_t> &modes) {
    detail::require_non_integer(c, "limit_convergence: c must not be an integer");
    for (std::size_t i = 1; i < modes.size(); ++i) {
        detail::require(modes[i] > modes[i - 1], "limit_convergence: N list must increase");
    }
    const auto mix = RadialMixture::delta(e);
    const double target =
        c < 0.0 ? 0.0 : poisson_cdf(e, static_cast<std::uint64_t>(std::floor(c)));
    std::vector<double> gaps;
    gaps.reserve(modes.size());
    for (auto n : modes) {
        gaps.push_back(std::abs(spectral_cdf(c, n, mix) - target));
    }
    return gaps;
}

//=========================================================================
// Mixture majorization
//=========================================================================

/// Validates a density matrix: Hermitian, PSD to -1e-12, unit trace to 1e-10.
inline void require_density(const ComplexMatrix &rho, const char *message) {
    detail::require(rho.rows() == rho.cols() && rho.rows() > 0, message);
    detail::require(hermitian_defect(rho) <= 1e-12, message);
    detail::require(std::abs(rho.trace().real() - 1.0) <= 1e-10, message);
    detail::require(eigh(rho).eigenvalues.minCoeff() >= -1e-12, message);
}

/**
 * Ky Fan partial sums: sum_{j<=k} lambda_j(t rho + (1-t) U rho U^dag) against
 * sum_{j<=k} lambda_j(rho).
 */
inline BoundReport ky_fan_check(const ComplexMatrix &rho, const ComplexMatrix &unitary,
                                double t, Eigen::Index k) {
    require_density(rho, "ky_fan_check: rho must be a density matrix");
    detail::require(unitary.rows() == rho.rows() && unitary.cols() == rho.cols(),
                    "ky_fan_check: U dimension mismatch");
    const ComplexMatrix id = ComplexMatrix::Identity(rho.rows(), rho.cols());
    detail::require((unitary.adjoint() * unitary - id).cwiseAbs().maxCoeff() <= 1e-12,
                    "ky_fan_check: U must be unitary");
    detail::require(t >= 0.0 && t <= 1.0, "ky_fan_check: t must lie in [0, 1]");
    detail::require(k >= 1 && k <= rho.rows(), "ky_fan_check: k must lie in [1, dim]");

    ComplexMatrix mixed = t * rho + (1.0 - t) * unitary * rho * unitary.adjoint();
    mixed = (mixed + mixed.adjoint()).eval() / 2.0;
    BoundReport r;
    r.lhs = top_eigenvalue_sum(eigh(mixed).eigenvalues, k);
    r.rhs = top_eigenvalue_sum(eigh(rho).eigenvalues, k);
    r.holds = r.lhs <= r.rhs + 1e-12;
    return r;
}

} // namespace photon_budget
