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
 * Seeded property sweep over random pure-state ensembles for the
 * hypothesis-testing inequalities in infospec.hpp. Instance i draws from
 * Rng(seed).stream(i), so any failure is reproducible from (seed, i) alone.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "infospec.hpp"
#include "numerics.hpp"

namespace photon_budget {

struct PropertySweepConfig {
    std::uint64_t seed = 20260101;
    std::uint64_t instances = 500;
    Eigen::Index min_dim = 2;
    Eigen::Index max_dim = 8;
    std::vector<double> ratios = {10.0, 100.0, 1e4};
    int random_tests = 200;
};

/// One failed inequality, with enough data to rebuild the instance.
struct Counterexample {
    std::uint64_t seed = 0;
    std::uint64_t instance = 0;
    std::string check;
    std::size_t state_index = 0;
    double level = 0.0;
    double test = 0.0;
    double observed = 0.0;
    double limit = 0.0;
    PureEnsemble ensemble;
};

struct PropertySweepReport {
    std::uint64_t instances = 0;
    std::uint64_t checks = 0;
    std::vector<Counterexample> failures;

    [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Random ensemble of 1..dim+2 states with a Dirichlet(1) prior.
inline PureEnsemble random_pure_ensemble(Rng &rng, Eigen::Index min_dim,
                                         Eigen::Index max_dim) {
    const auto dim = static_cast<Eigen::Index>(
        min_dim + rng.uniform_index(static_cast<std::uint64_t>(max_dim - min_dim + 1)));
    const auto count = 1 + rng.uniform_index(static_cast<std::uint64_t>(dim + 2));
    std::vector<ComplexVector> states;
    std::vector<double> prior;
    double total = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
        states.push_back(random_unit_vector(rng, dim));
        prior.push_back(-std::log(1.0 - rng.uniform()));
        total += prior.back();
    }
    for (auto &p : prior) {
        p /= total;
    }
    return {std::move(states), std::move(prior)};
}

/// Random effect 0 <= A <= I; every fourth draw is a projector.
inline ComplexMatrix random_effect(Rng &rng, Eigen::Index dim) {
    const ComplexMatrix u = random_unitary(rng, dim);
    const bool projector = rng.uniform_index(4) == 0;
    RealVector diag(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        diag(j) = projector ? static_cast<double>(rng.uniform_index(2)) : rng.uniform();
    }
    return u * diag.cast<std::complex<double>>().asDiagonal() * u.adjoint();
}

/**
 * Level threshold s = 1/lambda with lambda log-uniform between half the
 * smallest nonzero eigenvalue of sigma and twice the largest, so both sides
 * of the level projector are exercised.
 */
inline double random_level(Rng &rng, const ComplexMatrix &sigma) {
    const RealVector ev = eigh(sigma).eigenvalues;
    double smallest = ev(0);
    for (Eigen::Index j = 0; j < ev.size(); ++j) {
        if (ev(j) > 1e-12) {
            smallest = std::min(smallest, ev(j));
        }
    }
    const double lo = std::log(0.5 * smallest);
    const double hi = std::log(2.0 * ev(0));
    return 1.0 / std::exp(rng.uniform(lo, hi));
}

namespace detail {

inline PropertySweepReport run_instance(const PropertySweepConfig &cfg, std::uint64_t index) {
    Rng rng = Rng(cfg.seed).stream(index);
    const PureEnsemble ens = random_pure_ensemble(rng, cfg.min_dim, cfg.max_dim);
    const ComplexMatrix sigma = average_state(ens);
    const Eigen::Index dim = ens.dim();

    PropertySweepReport out;
    out.instances = 1;
    auto record = [&](bool ok, const char *check, std::size_t state, double s, double t,
                      double observed, double limit) {
        ++out.checks;
        if (!ok) {
            out.failures.push_back(
                {cfg.seed, index, check, state, s, t, observed, limit, ens});
        }
    };

    std::vector<double> levels;
    for (double ratio : cfg.ratios) {
        const double s = random_level(rng, sigma);
        levels.push_back(s);
        const TestThresholds th(s, ratio * s);
        for (std::size_t x = 0; x < ens.size(); ++x) {
            const ComplexVector &psi = ens.states()[x];
            const PositivePart part = positive_part_projector(psi, sigma, th.test);
            record(part.positive_count <= 1, "rank_at_most_one", x, s, th.test,
                   static_cast<double>(part.positive_count), 1.0);

            const NpProbabilities np = np_probabilities(psi, sigma, th.test);
            record(np.beta <= 1.0 / th.test + kCheckSlack, "beta_bound", x, s, th.test,
                   np.beta, 1.0 / th.test);

            const GentleReport gentle = gentle_overlap_check(psi, sigma, th);
            record(gentle.overlap <= gentle.overlap_cap + kCheckSlack, "gentle_overlap", x,
                   s, th.test, gentle.overlap, gentle.overlap_cap);
            record(gentle.trace_norm_gap <= gentle.bound + kCheckSlack, "gentle_trace_norm",
                   x, s, th.test, gentle.trace_norm_gap, gentle.bound);

            const ProjectedOverlapReport proj = projected_overlap_check(psi, sigma, s);
            record(proj.holds, "projected_overlap", x, s, th.test, proj.value, proj.bound);
        }
        const SandwichCheckReport sandwich = sandwich_check(ens, th);
        record(sandwich.holds, "sandwich", 0, s, th.test, sandwich.lhs, sandwich.rhs);
    }

    // Neyman-Pearson dominance: (1 - alpha) - t beta >= Tr(wA) - t Tr(sigma A).
    std::vector<std::vector<double>> optimum(ens.size());
    for (std::size_t x = 0; x < ens.size(); ++x) {
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const double t = cfg.ratios[k] * levels[k];
            const NpProbabilities np = np_probabilities(ens.states()[x], sigma, t);
            optimum[x].push_back((1.0 - np.alpha) - t * np.beta);
        }
    }
    for (int a = 0; a < cfg.random_tests; ++a) {
        const ComplexMatrix effect = random_effect(rng, dim);
        const double sigma_a = (sigma * effect).trace().real();
        for (std::size_t x = 0; x < ens.size(); ++x) {
            const ComplexVector &psi = ens.states()[x];
            const double w_a = (psi.adjoint() * effect * psi)(0, 0).real();
            for (std::size_t k = 0; k < levels.size(); ++k) {
                const double t = cfg.ratios[k] * levels[k];
                const double value = w_a - t * sigma_a;
                record(optimum[x][k] >= value - kCheckSlack * std::max(1.0, t),
                       "neyman_pearson", x, levels[k], t, value, optimum[x][k]);
            }
        }
    }
    return out;
}

} // namespace detail

/// Runs instances in parallel (worker_count() threads); failures are ordered by instance.
inline PropertySweepReport run_property_sweep(const PropertySweepConfig &cfg) {
    detail::require(cfg.min_dim >= 2 && cfg.max_dim >= cfg.min_dim,
                    "run_property_sweep: invalid dimension range");
    std::vector<PropertySweepReport> parts(cfg.instances);
    std::atomic<std::uint64_t> next{0};
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(1, cfg.instances)));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t i = next++; i < cfg.instances; i = next++) {
                try {
                    parts[i] = detail::run_instance(cfg, i);
                } catch (const std::exception &) {
                    // Rebuild the ensemble so the dump stays reproducible.
                    Rng rng = Rng(cfg.seed).stream(i);
                    parts[i].instances = 1;
                    parts[i].failures.push_back(
                        {cfg.seed, i, "exception", 0, 0.0, 0.0, 0.0, 0.0,
                         random_pure_ensemble(rng, cfg.min_dim, cfg.max_dim)});
                }
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    PropertySweepReport total;
    for (auto &p : parts) {
        total.instances += p.instances;
        total.checks += p.checks;
        for (auto &f : p.failures) {
            total.failures.push_back(std::move(f));
        }
    }
    return total;
}

} // namespace photon_budget
