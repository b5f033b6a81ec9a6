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
 * Energy-constrained capacities of the noiseless coherent-state channel and
 * the classical Gaussian comparison. All values are in nats.
 */

#pragma once

#include <cmath>
#include <cstdint>

#include "numerics.hpp"

namespace photon_budget {

/// Mean photon number E >= 0.
class EnergyBudget {
  public:
    explicit EnergyBudget(double mean_photons) : value_(mean_photons) {
        detail::require(std::isfinite(mean_photons) && mean_photons >= 0.0,
                        "EnergyBudget: E must be finite and >= 0");
    }
    [[nodiscard]] double value() const { return value_; }

  private:
    double value_;
};

/// Energy budget spread over K pulses, with a noise variance V used only by
/// the Gaussian comparison.
struct PeriodConfig {
    PeriodConfig(EnergyBudget e, std::uint64_t pulses, double variance = 1.0)
        : energy(e), pulses(pulses), variance(variance) {
        detail::require(pulses >= 1, "PeriodConfig: K must be >= 1");
        detail::require(std::isfinite(variance) && variance > 0.0,
                        "PeriodConfig: V must be > 0");
    }

    EnergyBudget energy;
    std::uint64_t pulses;
    double variance;
};

/// (E+1) ln(E+1) - E ln E, continuous at E = 0.
inline double holevo_capacity(EnergyBudget e) {
    const double x = e.value();
    if (x == 0.0) {
        return 0.0;
    }
    return (x + 1.0) * std::log1p(x) - x * std::log(x);
}

/// K * C(E/K).
inline double period_capacity(const PeriodConfig &cfg) {
    const double k = static_cast<double>(cfg.pulses);
    return k * holevo_capacity(EnergyBudget(cfg.energy.value() / k));
}

/// E ln K + E - E ln E + E^2/(2K); undefined at E = 0.
inline double period_capacity_expansion(const PeriodConfig &cfg) {
    const double e = cfg.energy.value();
    detail::require(e > 0.0, "period_capacity_expansion: E must be > 0");
    const double k = static_cast<double>(cfg.pulses);
    return e * std::log(k) + e - e * std::log(e) + e * e / (2.0 * k);
}

/// (1/2) ln(1 + E/V).
inline double gaussian_capacity(double intensity, double variance) {
    detail::require(std::isfinite(intensity) && intensity >= 0.0,
                    "gaussian_capacity: E must be >= 0");
    detail::require(std::isfinite(variance) && variance > 0.0,
                    "gaussian_capacity: V must be > 0");
    return 0.5 * std::log1p(intensity / variance);
}

/// (K/2) ln(1 + E/(KV)), bounded by E/(2V).
inline double gaussian_period_capacity(const PeriodConfig &cfg) {
    const double k = static_cast<double>(cfg.pulses);
    return k * gaussian_capacity(cfg.energy.value() / k, cfg.variance);
}

/// The K -> infinity ceiling E/(2V) of the Gaussian period capacity.
inline double gaussian_period_limit(const PeriodConfig &cfg) {
    return cfg.energy.value() / (2.0 * cfg.variance);
}

} // namespace photon_budget
