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
 * Logarithmic-order capacity staircase under a per-codeword energy budget:
 * the largest m whose Poisson(E) partial sum up to m stays at or below the
 * tolerated error, and its inverse in E.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "capacity.hpp"
#include "numerics.hpp"

namespace photon_budget {

/// ln P(X <= m), X ~ Poisson(E), by the term recurrence t_n = t_{n-1} E / n.
inline LogProb poisson_cdf_log(EnergyBudget e, std::uint64_t m) {
    const double mean = e.value();
    if (mean == 0.0) {
        return LogProb::one();
    }
    const double log_mean = std::log(mean);
    LogProb term(-mean);
    LogProb acc = term;
    for (std::uint64_t n = 1; n <= m; ++n) {
        term = LogProb(term.value() + log_mean - std::log(static_cast<double>(n)));
        acc += term;
    }
    return acc;
}

inline double poisson_cdf(EnergyBudget e, std::uint64_t m) {
    return std::min(1.0, poisson_cdf_log(e, m).linear());
}

/**
 * ln P(X > m), summed upward from m+1 until terms drop below 1e-18 of the
 * running total (and past the mode).
 */
inline LogProb poisson_upper_tail_log(EnergyBudget e, std::uint64_t m) {
    const double mean = e.value();
    if (mean == 0.0) {
        return LogProb::zero();
    }
    const double log_mean = std::log(mean);
    LogProb term = poisson_pmf_log(mean, m + 1);
    LogProb acc = term;
    for (std::uint64_t n = m + 2;; ++n) {
        term = LogProb(term.value() + log_mean - std::log(static_cast<double>(n)));
        acc += term;
        if (static_cast<double>(n) > mean &&
            term.value() < acc.value() + std::log(1e-18)) {
            break;
        }
    }
    return acc;
}

inline double poisson_upper_tail(EnergyBudget e, std::uint64_t m) {
    return poisson_upper_tail_log(e, m).linear();
}

struct LogLawResult {
    /// Empty when even m = 0 is inadmissible (e^{-E} > epsilon).
    std::optional<std::uint64_t> m_star;
    /// CDF at m_star (0 when m_star is empty, i.e. the CDF at -1).
    double cdf_at_m = 0.0;
    double cdf_at_m_plus_1 = 0.0;

    [[nodiscard]] bool has_positive_rate() const { return m_star.has_value(); }
};

/**
 * Largest m >= 0 with P(X <= m) <= epsilon, X ~ Poisson(E). Ties count as
 * admissible. The comparison is done on the linear CDF so that
 * epsilon = e^{-E} reproduces m = 0 exactly.
 */
inline LogLawResult log_capacity(double epsilon, EnergyBudget e) {
    detail::require(epsilon >= 0.0 && epsilon < 1.0,
                    "log_capacity: epsilon must lie in [0, 1)");
    const double mean = e.value();
    LogLawResult out;
    if (mean == 0.0) {
        out.cdf_at_m_plus_1 = 1.0;
        return out;
    }
    const double log_mean = std::log(mean);
    LogProb term(-mean);
    LogProb acc = term;
    double cdf = acc.linear();
    if (cdf > epsilon) {
        out.cdf_at_m_plus_1 = cdf;
        return out;
    }
    std::uint64_t m = 0;
    for (;;) {
        const std::uint64_t next = m + 1;
        term = LogProb(term.value() + log_mean -
                       std::log(static_cast<double>(next)));
        acc += term;
        const double next_cdf = std::min(1.0, acc.linear());
        if (next_cdf > epsilon) {
            out.m_star = m;
            out.cdf_at_m = cdf;
            out.cdf_at_m_plus_1 = next_cdf;
            return out;
        }
        cdf = next_cdf;
        m = next;
    }
}

/// Tolerance and iteration cap of the `min_energy` bisection.
constexpr double kMinEnergyTolerance = 1e-10;
constexpr int kMinEnergyMaxIterations = 200;

/**
 * Smallest E with P(X <= m) <= epsilon. The CDF is strictly decreasing in E
 * for fixed m, so bisection on [lo, hi] keeps hi admissible throughout and
 * returns it. m = 0 is solved exactly as -ln epsilon.
 */
inline EnergyBudget min_energy(std::uint64_t m, double epsilon) {
    detail::require(epsilon > 0.0 && epsilon < 1.0,
                    "min_energy: epsilon must lie in (0, 1)");
    if (m == 0) {
        return EnergyBudget(-std::log(epsilon));
    }
    auto admissible = [&](double energy) {
        return poisson_cdf(EnergyBudget(energy), m) <= epsilon;
    };
    double lo = 0.0;
    double hi = std::max(1.0, static_cast<double>(m));
    while (!admissible(hi)) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < kMinEnergyMaxIterations && hi - lo > kMinEnergyTolerance;
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (admissible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return EnergyBudget(hi);
}

} // namespace photon_budget
