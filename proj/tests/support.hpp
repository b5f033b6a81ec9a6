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


// Random instance generators shared by the unit tests and the acceptance binary.

#pragma once

#include <cmath>
#include <vector>

#include "photon_budget/numerics.hpp"
#include "photon_budget/spectrum.hpp"

namespace photon_budget::testing {

/// 1..max_atoms atoms with radii uniform in [0, sqrt(E)] and Dirichlet(1) weights.
inline RadialMixture random_mixture(Rng &rng, double energy, int max_atoms = 4) {
    const int count = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_atoms)));
    std::vector<RadialAtom> atoms;
    double total = 0.0;
    for (int i = 0; i < count; ++i) {
        const double w = -std::log(1.0 - rng.uniform());
        atoms.push_back({std::sqrt(energy) * rng.uniform(), w});
        total += w;
    }
    for (auto &a : atoms) {
        a.weight /= total;
    }
    return {std::move(atoms), EnergyBudget(energy)};
}

} // namespace photon_budget::testing
