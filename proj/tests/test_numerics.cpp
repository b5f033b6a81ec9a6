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
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "catch_amalgamated.hpp"
#include "photon_budget/numerics.hpp"

using namespace photon_budget;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// ln C(n, k) from an exact big-integer binomial, rounded through 50 digits.
double exact_log_binomial(std::uint64_t n, std::uint64_t k) {
    using boost::multiprecision::cpp_bin_float_50;
    using boost::multiprecision::cpp_int;
    k = std::min(k, n - k);
    cpp_int c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return static_cast<double>(log(cpp_bin_float_50(c)));
}

} // namespace

TEST_CASE("LogProb arithmetic stays in log space", "[numerics]") {
    const LogProb a = LogProb::from_linear(0.25);
    const LogProb b = LogProb::from_linear(0.5);
    CHECK_THAT((a * b).linear(), WithinRel(0.125, 1e-15));
    CHECK_THAT((a / b).linear(), WithinRel(0.5, 1e-15));
    CHECK_THAT((a + b).linear(), WithinRel(0.75, 1e-15));
    CHECK((LogProb::zero() + LogProb::zero()).is_zero());
    CHECK((a + LogProb::zero()).value() == a.value());
    CHECK(LogProb::from_linear(0.0).is_zero());
    CHECK(a < b);

    // Far below double range in linear terms.
    const LogProb tiny(-2000.0);
    CHECK_THAT((tiny + tiny).value(), WithinAbs(-2000.0 + std::log(2.0), 1e-12));
}

TEST_CASE("log_sum_exp handles -inf and large offsets", "[numerics]") {
    const std::vector<double> none = {kNegInf, kNegInf};
    CHECK(log_sum_exp(none).is_zero());
    const std::vector<double> big = {1000.0, 1000.0, kNegInf};
    CHECK_THAT(log_sum_exp(big).value(), WithinAbs(1000.0 + std::log(2.0), 1e-12));
}

TEST_CASE("log_binomial matches an exact big-integer oracle", "[numerics]") {
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> cases = {
        {0, 0},      {1, 0},       {1, 1},         {10, 3},       {52, 5},
        {60, 30},    {61, 31},     {100, 50},      {200, 31},     {1000, 500},
        {1000, 999}, {5000, 40},   {20000, 10000}, {1000000, 29}, {1000000, 31},
        {1000001, 3}};
    for (auto [n, k] : cases) {
        INFO("n=" << n << " k=" << k);
        const double expected = exact_log_binomial(n, k);
        CHECK_THAT(log_binomial(n, k).value(),
                   WithinAbs(expected, 1e-12 * std::max(1.0, std::abs(expected))));
    }
}

TEST_CASE("log_binomial at n = 1e9 against the oracle", "[numerics]") {
    const std::uint64_t n = 1000000000ULL;
    for (std::uint64_t k : {1ULL, 2ULL, 30ULL, 31ULL, 100ULL, 1000ULL}) {
        INFO("k=" << k);
        const double expected = exact_log_binomial(n, k);
        CHECK_THAT(log_binomial(n, k).value(), WithinRel(expected, 1e-13));
    }
}

TEST_CASE("log_binomial rejects k > n", "[numerics]") {
    CHECK_THROWS_AS(log_binomial(3, 4), DomainError);
}

TEST_CASE("poisson_pmf_log values and corners", "[numerics]") {
    CHECK(poisson_pmf_log(0.0, 0).value() == 0.0);
    CHECK(poisson_pmf_log(0.0, 3).is_zero());
    CHECK_THAT(poisson_pmf_log(1.0, 0).linear(), WithinRel(std::exp(-1.0), 1e-15));
    CHECK_THAT(poisson_pmf_log(2.0, 3).linear(), WithinRel(std::exp(-2.0) * 8.0 / 6.0, 1e-14));
    // Underflows in linear space, finite in log space.
    CHECK(std::isfinite(poisson_pmf_log(1.0, 500).value()));
    CHECK_THROWS_AS(poisson_pmf_log(-1.0, 0), DomainError);
}

TEST_CASE("pmf sums to one over a long range", "[numerics][property]") {
    for (double mean : {0.1, 1.0, 7.5, 40.0}) {
        LogProb total = LogProb::zero();
        for (std::uint64_t n = 0; n < 400; ++n) {
            total += poisson_pmf_log(mean, n);
        }
        CHECK_THAT(total.linear(), WithinAbs(1.0, 1e-13));
    }
}

TEST_CASE("eigh reconstructs random Hermitian matrices", "[numerics][property]") {
    Rng rng(7);
    for (Eigen::Index d : {1, 2, 5, 16, 40}) {
        ComplexMatrix g(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                g(i, j) = {rng.normal(), rng.normal()};
            }
        }
        const ComplexMatrix a = (g + g.adjoint()) / 2.0;
        const auto dec = eigh(a);
        const ComplexMatrix v = dec.eigenvectors;
        const ComplexMatrix rebuilt =
            v * dec.eigenvalues.cast<std::complex<double>>().asDiagonal() * v.adjoint();
        CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-12 * d);
        CHECK((v.adjoint() * v - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK_THAT(dec.eigenvalues.sum(), WithinAbs(a.trace().real(), 1e-11));
        for (Eigen::Index j = 1; j < d; ++j) {
            CHECK(dec.eigenvalues(j - 1) >= dec.eigenvalues(j));
        }
    }
}

TEST_CASE("eigh works on real symmetric input", "[numerics]") {
    Eigen::MatrixXd a(2, 2);
    a << 2.0, 1.0, 1.0, 2.0;
    const auto dec = eigh(a);
    CHECK_THAT(dec.eigenvalues(0), WithinAbs(3.0, 1e-14));
    CHECK_THAT(dec.eigenvalues(1), WithinAbs(1.0, 1e-14));
}

TEST_CASE("eigh rejects non-Hermitian and oversized input", "[numerics]") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(eigh(a), DomainError);
    CHECK_THROWS_AS(eigh(ComplexMatrix::Zero(kMaxEighDim + 1, kMaxEighDim + 1)), DomainError);
}

TEST_CASE("random densities are valid states", "[numerics][property]") {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.uniform_index(7));
        const Eigen::Index r = 1 + static_cast<Eigen::Index>(rng.uniform_index(d));
        const ComplexMatrix rho = random_density(rng, d, r);
        const auto ev = eigh(rho).eigenvalues;
        CHECK(ev.minCoeff() > -1e-12);
        CHECK_THAT(ev.sum(), WithinAbs(1.0, 1e-12));
        CHECK(hermitian_defect(rho) < 1e-15);
        CHECK_THAT(trace_norm(rho), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("random unitaries are unitary", "[numerics][property]") {
    Rng rng(3);
    for (Eigen::Index d = 1; d <= 8; ++d) {
        const ComplexMatrix u = random_unitary(rng, d);
        CHECK((u.adjoint() * u - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("Rng is reproducible and streams are distinct", "[numerics]") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a() == b());
    }
    const Rng root(42);
    Rng s0 = root.stream(0), s0b = root.stream(0), s1 = root.stream(1);
    const auto x0 = s0();
    CHECK(x0 == s0b());
    CHECK(x0 != s1());
    CHECK(Rng(1)() != Rng(2)());
}

TEST_CASE("top_eigenvalue_sum and trace_norm", "[numerics]") {
    RealVector v(4);
    v << 4.0, 3.0, -1.0, -2.0;
    CHECK(top_eigenvalue_sum(v, 2) == 7.0);
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -2.0;
    CHECK_THAT(trace_norm(a), WithinAbs(3.0, 1e-14));
}
