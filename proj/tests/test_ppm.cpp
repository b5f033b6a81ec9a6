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


#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "catch_amalgamated.hpp"
#include "photon_budget/ppm.hpp"

using namespace photon_budget;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
double sigma_distance(const SimulationReport &r, double p) {
    const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(r.trials));
    return std::abs(r.empirical_error - p) / sd;
}
} // namespace

TEST_CASE("Exact PPM error", "[ppm]") {
    CHECK(exact_error({4, EnergyBudget(0.0)}) == 1.0);
    CHECK_THAT(exact_error({4, EnergyBudget(1.0)}), WithinRel(0.36787944117144233, 1e-15));
    CHECK_THAT(exact_error({4, EnergyBudget(std::log(100.0))}), WithinRel(0.01, 1e-14));
    // Independent of N.
    CHECK(exact_error({2, EnergyBudget(3.0)}) == exact_error({1000000, EnergyBudget(3.0)}));
}

TEST_CASE("Decoder maps dark slots to the inconclusive outcome", "[ppm]") {
    const PpmCode code(8, EnergyBudget(1.0));
    CHECK(decode(code, {3, 2}) == 3);
    CHECK(decode(code, {3, 0}) == 8);
}

TEST_CASE("Monte-Carlo agrees with the closed form", "[ppm][property]") {
    const SimulationReport r1 = simulate({16, EnergyBudget(1.0)}, 1000000, 2026);
    CHECK(sigma_distance(r1, std::exp(-1.0)) < 3.0);
    CHECK(r1.ci95.lo <= std::exp(-1.0));
    CHECK(r1.ci95.hi >= std::exp(-1.0));

    const SimulationReport r5 = simulate({16, EnergyBudget(5.0)}, 1000000, 2027);
    CHECK(sigma_distance(r5, std::exp(-5.0)) < 3.0);

    const SimulationReport r0 = simulate({16, EnergyBudget(0.0)}, 1000, 1);
    CHECK(r0.empirical_error == 1.0);
    CHECK(r0.errors == 1000);
}

TEST_CASE("Simulation is determined by seed and shard count", "[ppm]") {
    const PpmCode code(32, EnergyBudget(0.7));
    const SimulationReport a = simulate(code, 100001, 99, 7);
    const SimulationReport b = simulate(code, 100001, 99, 7);
    CHECK(a.errors == b.errors);
    CHECK(a.trials == 100001);
    const SimulationReport c = simulate(code, 100001, 100, 7);
    CHECK(a.errors != c.errors);

    // Thread count does not matter for a fixed shard layout.
    ::setenv("PHOTON_BUDGET_THREADS", "1", 1);
    const SimulationReport serial = simulate(code, 100001, 99, 7);
    ::setenv("PHOTON_BUDGET_THREADS", "3", 1);
    const SimulationReport threaded = simulate(code, 100001, 99, 7);
    ::unsetenv("PHOTON_BUDGET_THREADS");
    CHECK(serial.errors == a.errors);
    CHECK(threaded.errors == a.errors);
}

TEST_CASE("Wilson interval", "[ppm]") {
    const Interval none = wilson_interval(0, 100);
    CHECK(none.lo == 0.0);
    CHECK(none.hi > 0.0);
    CHECK(none.hi < 0.05);
    const Interval half = wilson_interval(500, 1000);
    CHECK_THAT(half.lo + half.hi, WithinAbs(1.0, 1e-14));
    CHECK_THAT(half.hi - half.lo, WithinRel(2.0 * 1.959963984540054 * std::sqrt(0.25 / 1000.0), 1e-2));
}

TEST_CASE("Achieved error never beats the lower bound", "[ppm][property]") {
    const ConsistencyReport two = consistency_with_bound({2, EnergyBudget(1.0)});
    CHECK(two.holds);
    CHECK_THAT(two.lower_bound, WithinAbs(0.0350632525, 1e-10));
    CHECK(consistency_with_bound({1000000, EnergyBudget(1.0)}).holds);
    CHECK(consistency_with_bound({4, EnergyBudget(10.0)}).holds);
    for (double e = 0.1; e <= 10.0 + 1e-9; e += 0.1) {
        for (std::uint64_t n = 2; n <= 1000000; n *= 3) {
            const ConsistencyReport r = consistency_with_bound({n, EnergyBudget(e)});
            CHECK(r.holds);
            CHECK(r.gap() >= 0.0);
        }
    }
    CHECK_THROWS_AS(consistency_with_bound({1, EnergyBudget(1.0)}), DomainError);
}

TEST_CASE("Boundary of the logarithmic law", "[ppm]") {
    // PPM error e^{-E} sits exactly on the m = 0 staircase boundary.
    const double e = 1.3;
    CHECK(exact_error({4, EnergyBudget(e)}) == std::exp(-e));
}

TEST_CASE("PPM input validation", "[ppm]") {
    CHECK_THROWS_AS(PpmCode(0, EnergyBudget(1.0)), DomainError);
    CHECK_THROWS_AS(simulate({2, EnergyBudget(1.0)}, 0, 1), DomainError);
    CHECK_THROWS_AS(simulate({2, EnergyBudget(1.0)}, 10, 1, 0), DomainError);
}
