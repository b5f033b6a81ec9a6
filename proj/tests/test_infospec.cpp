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
#include <complex>
#include <vector>

#include "catch_amalgamated.hpp"
#include "photon_budget/property_sweep.hpp"
#include "photon_budget/infospec.hpp"

using namespace photon_budget;
using Catch::Matchers::WithinAbs;

namespace {
ComplexVector basis(Eigen::Index dim, Eigen::Index i) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(i) = 1.0;
    return v;
}

ComplexMatrix diag(std::initializer_list<double> values) {
    const auto n = static_cast<Eigen::Index>(values.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    Eigen::Index i = 0;
    for (double v : values) {
        m(i, i) = v;
        ++i;
    }
    return m;
}
} // namespace

TEST_CASE("average_state of simple ensembles", "[infospec]") {
    const ComplexVector psi = basis(2, 0);
    const PureEnsemble single({psi}, {1.0});
    CHECK((average_state(single) - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

    const PureEnsemble pair({basis(2, 0), basis(2, 1)}, {0.5, 0.5});
    CHECK((average_state(pair) - diag({0.5, 0.5})).cwiseAbs().maxCoeff() < 1e-15);

    Rng rng(2);
    const PureEnsemble three({random_unit_vector(rng, 4), random_unit_vector(rng, 4),
                              random_unit_vector(rng, 4)},
                             {0.2, 0.3, 0.5});
    const ComplexMatrix sigma = average_state(three);
    CHECK_THAT(sigma.trace().real(), WithinAbs(1.0, 1e-12));
    CHECK(eigh(sigma).eigenvalues.minCoeff() > -1e-12);
}

TEST_CASE("Positive part and Neyman-Pearson hand case", "[infospec]") {
    const ComplexVector psi = basis(2, 0);
    const ComplexMatrix sigma = diag({0.5, 0.5});
    const PositivePart part = positive_part_projector(psi, sigma, 1.0);
    REQUIRE_FALSE(part.is_zero());
    CHECK(part.positive_count == 1);
    CHECK((part.projector(2) - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const NpProbabilities np = np_probabilities(psi, sigma, 1.0);
    CHECK_THAT(np.alpha, WithinAbs(0.0, 1e-14));
    CHECK_THAT(np.beta, WithinAbs(0.5, 1e-14));

    // Tiny t: the projector approaches |psi><psi|.
    const PositivePart small = positive_part_projector(psi, sigma, 1e-9);
    CHECK((small.projector(2) - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-8);

    // Large t: nothing positive, alpha = 1, beta = 0.
    CHECK(positive_part_projector(psi, sigma, 2.5).is_zero());
    const NpProbabilities none = np_probabilities(psi, sigma, 2.5);
    CHECK(none.alpha == 1.0);
    CHECK(none.beta == 0.0);
}

TEST_CASE("Level projector hand cases", "[infospec]") {
    const ComplexMatrix sigma = diag({0.7, 0.3});
    const LevelProjector lp = level_projector(sigma, 2.0);
    CHECK_THAT(lp.upper_weight, WithinAbs(0.7, 1e-15));
    CHECK((lp.above() - diag({1.0, 0.0})).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(level_projector(sigma, 1.0).upper_weight == 0.0);
    CHECK_THAT(level_projector(sigma, 1e6).upper_weight, WithinAbs(1.0, 1e-15));
}

TEST_CASE("Gentle overlap hand cases", "[infospec]") {
    const ComplexVector psi = basis(2, 0);
    const ComplexMatrix sigma = diag({0.5, 0.5});
    // At t' = 3 the positive part is empty, so the check passes vacuously.
    GentleReport r = gentle_overlap_check(psi, sigma, {1.5, 3.0});
    CHECK(r.vacuous);
    CHECK(r.holds);
    // At t' = 1.8 the positive part is psi; I - B = 0 since 1/s > 0.5.
    r = gentle_overlap_check(psi, sigma, {1.5, 1.8});
    CHECK_FALSE(r.vacuous);
    CHECK(r.overlap == 0.0);
    CHECK_THAT(r.trace_norm_gap, WithinAbs(0.0, 1e-14));
    CHECK(r.holds);
}

TEST_CASE("Sandwich hand case with orthogonal states", "[infospec]") {
    const PureEnsemble ens({basis(2, 0), basis(2, 1)}, {0.5, 0.5});
    const SandwichCheckReport r = sandwich_check(ens, {1.9, 1000.0});
    // Positive parts vanish (1 - 500 < 0), so every alpha is 1; 1/s > 1/2 so I - B = 0.
    CHECK_THAT(r.lhs, WithinAbs(1.0, 1e-15));
    CHECK_THAT(r.rhs, WithinAbs(-2.0 * std::sqrt(0.0019), 1e-15));
    CHECK(r.holds);

    // s above 2 moves both eigenvalues into I - B.
    const SandwichCheckReport big = sandwich_check(ens, {2.5, 250.0});
    CHECK_THAT(big.rhs, WithinAbs(1.0 - 2.0 * std::sqrt(0.01), 1e-15));
    CHECK(big.holds);
}

TEST_CASE("Projected overlap hand cases", "[infospec]") {
    const ComplexMatrix sigma = diag({0.5, 0.3, 0.2});
    ProjectedOverlapReport r = projected_overlap_check(basis(3, 2), sigma, 3.0);
    CHECK_THAT(r.value, WithinAbs(0.2, 1e-15));
    CHECK(r.holds);
    r = projected_overlap_check(basis(3, 0), sigma, 3.0);
    CHECK(r.vacuous);

    Rng rng(8);
    const PureEnsemble ens({random_unit_vector(rng, 3), random_unit_vector(rng, 3)}, {0.4, 0.6});
    const ComplexMatrix mixed = average_state(ens);
    const double s = 1.0 / (0.5 * eigh(mixed).eigenvalues(0));
    r = projected_overlap_check(ens.states()[0], mixed, s);
    CHECK(r.value < r.bound);
}

TEST_CASE("Positive part has rank at most one", "[infospec][property]") {
    Rng rng(41);
    for (Eigen::Index d = 2; d <= 16; ++d) {
        for (int i = 0; i < 40; ++i) {
            const auto rank = static_cast<Eigen::Index>(1 + rng.uniform_index(static_cast<std::uint64_t>(d)));
            const ComplexMatrix sigma = random_density(rng, d, rank);
            const ComplexVector psi = random_unit_vector(rng, d);
            const double t = std::exp(rng.uniform(-3.0, 5.0));
            const PositivePart part = positive_part_projector(psi, sigma, t);
            CHECK(part.positive_count <= 1);
            const NpProbabilities np = np_probabilities(psi, sigma, t);
            CHECK(np.beta <= 1.0 / t + kCheckSlack);
            CHECK(np.alpha >= 0.0);
            CHECK(np.alpha <= 1.0);
        }
    }
}

TEST_CASE("Neyman-Pearson dominance on a dim-6 instance", "[infospec][property]") {
    Rng rng(43);
    const ComplexMatrix sigma = random_density(rng, 6, 6);
    const ComplexVector psi = random_unit_vector(rng, 6);
    for (double t : {0.5, 2.0, 10.0}) {
        const NpProbabilities np = np_probabilities(psi, sigma, t);
        const double optimum = (1.0 - np.alpha) - t * np.beta;
        for (int a = 0; a < 200; ++a) {
            const ComplexMatrix effect = random_effect(rng, 6);
            const double value = (psi.adjoint() * effect * psi)(0, 0).real() -
                                 t * (sigma * effect).trace().real();
            CHECK(optimum >= value - 1e-12);
        }
    }
}

TEST_CASE("Property sweep passes and is reproducible", "[infospec][property]") {
    PropertySweepConfig cfg;
    cfg.instances = 40;
    cfg.random_tests = 50;
    const PropertySweepReport report = run_property_sweep(cfg);
    CHECK(report.passed());
    CHECK(report.instances == 40);
    CHECK(report.checks > 40 * 50);

    const auto a = detail::run_instance(cfg, 7);
    const auto b = detail::run_instance(cfg, 7);
    CHECK(a.checks == b.checks);
}

TEST_CASE("Infospec input validation", "[infospec]") {
    CHECK_THROWS_AS(PureEnsemble({basis(2, 0)}, {0.5}), DomainError);
    CHECK_THROWS_AS(PureEnsemble({ComplexVector::Ones(2)}, {1.0}), DomainError);
    CHECK_THROWS_AS(PureEnsemble({basis(2, 0), basis(3, 0)}, {0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(PureEnsemble({basis(1, 0)}, {1.0}), DomainError);
    CHECK_THROWS_AS(TestThresholds(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(TestThresholds(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(level_projector(diag({0.5, 0.5}), 0.0), DomainError);
    CHECK_THROWS_AS(positive_part_projector(basis(2, 0), diag({0.5, 0.5}), 0.0), DomainError);
}
