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
 * Pulse-position modulation over N slots with a single coherent pulse of
 * mean photon number E, decoded by on-off detection.
 *
 * Message i puts |alpha> (|alpha|^2 = E) in slot i and vacuum elsewhere. The
 * decoder outcome Y_i fires when slot i clicks and every other slot is dark;
 * the remainder of the incomplete POVM (all slots dark) is an error. The
 * only failure mode is a dark pulsed slot, with probability |<0|alpha>|^2 = e^{-E}.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "capacity.hpp"
#include "discrimination.hpp"
#include "numerics.hpp"

namespace photon_budget {

struct PpmCode {
    PpmCode(std::uint64_t slots, EnergyBudget energy) : slots(slots), energy(energy) {
        detail::require(slots >= 1, "PpmCode: N must be >= 1");
    }
    std::uint64_t slots;
    EnergyBudget energy;
};

/// e^{-E}, independent of the slot count.
inline double exact_error(const PpmCode &code) {
    return std::exp(-code.energy.value());
}

/// Slot photon counts for one transmission; `sent` is the pulsed slot.
struct PpmDetection {
    std::uint64_t sent = 0;
    std::uint64_t pulsed_count = 0;
};

/// Decoded message, or N for the inconclusive all-dark outcome.
inline std::uint64_t decode(const PpmCode &code, const PpmDetection &det) {
    return det.pulsed_count > 0 ? det.sent : code.slots;
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval at z = 1.96.
inline Interval wilson_interval(std::uint64_t errors, std::uint64_t trials) {
    detail::require(trials >= 1 && errors <= trials, "wilson_interval: need 0 <= errors <= trials, trials >= 1");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double center = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
    // The exact endpoints at 0 and n errors are 0 and 1; rounding would leave ~1e-18.
    return {errors == 0 ? 0.0 : std::max(0.0, center - half),
            errors == trials ? 1.0 : std::min(1.0, center + half)};
}

struct SimulationReport {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double empirical_error = 0.0;
    Interval ci95;
};

/// Default shard layout; results depend on (seed, shards), not on threads.
constexpr unsigned kDefaultShards = 16;

namespace detail {
inline std::uint64_t simulate_shard(const PpmCode &code, std::uint64_t trials, Rng rng) {
    const double mean = code.energy.value();
    std::poisson_distribution<std::uint64_t> photons(mean > 0.0 ? mean : 1.0);
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        PpmDetection det;
        det.sent = rng.uniform_index(code.slots);
        det.pulsed_count = mean > 0.0 ? photons(rng) : 0;
        if (decode(code, det) != det.sent) {
            ++errors;
        }
    }
    return errors;
}
} // namespace detail

/**
 * Monte-Carlo estimate of the decoding error. Trials are split over `shards`
 * independent streams rng.stream(i); shards run on up to worker_count()
 * threads.
 */
inline SimulationReport simulate(const PpmCode &code, std::uint64_t trials,
                                 std::uint64_t seed, unsigned shards = kDefaultShards) {
    detail::require(trials >= 1, "simulate: trials must be >= 1");
    detail::require(shards >= 1, "simulate: shards must be >= 1");
    const Rng root(seed);
    std::vector<std::uint64_t> shard_errors(shards, 0);
    auto shard_trials = [&](unsigned i) {
        return trials / shards + (i < trials % shards ? 1 : 0);
    };
    const unsigned workers = std::min(shards, worker_count());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (unsigned i = w; i < shards; i += workers) {
                shard_errors[i] = detail::simulate_shard(code, shard_trials(i), root.stream(i));
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    SimulationReport r;
    r.trials = trials;
    for (auto e : shard_errors) {
        r.errors += e;
    }
    r.empirical_error = static_cast<double>(r.errors) / static_cast<double>(trials);
    r.ci95 = wilson_interval(r.errors, trials);
    return r;
}

struct ConsistencyReport {
    double achieved = 0.0;
    double lower_bound = 0.0;
    bool holds = false;

    [[nodiscard]] double gap() const { return achieved - lower_bound; }
};

/// The achieved error must sit at or above the covariant lower bound for N messages.
inline ConsistencyReport consistency_with_bound(const PpmCode &code) {
    detail::require(code.slots >= 2, "consistency_with_bound: N must be >= 2");
    ConsistencyReport r;
    r.achieved = exact_error(code);
    r.lower_bound = error_lower_bound(code.energy, code.slots);
    r.holds = r.achieved >= r.lower_bound;
    return r;
}

} // namespace photon_budget
