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
 * Error lower bound for M energy-limited pure codewords, evaluated through
 * the symmetric family |f_i> = sqrt(p)|0> + sqrt(1-p)|i>, p = e^{-E}.
 *
 * Two independent routes are provided: the closed-form covariant optimum and
 * a square-root measurement built numerically from the Gram matrix.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>

#include "capacity.hpp"
#include "numerics.hpp"

namespace photon_budget {

/// M messages with pairwise overlap p.
struct SymmetricEnsemble {
    SymmetricEnsemble(std::uint64_t messages, double overlap)
        : messages(messages), overlap(overlap) {
        detail::require(messages >= 1, "SymmetricEnsemble: M must be >= 1");
        detail::require(overlap >= 0.0 && overlap <= 1.0,
                        "SymmetricEnsemble: p must lie in [0, 1]");
    }

    static SymmetricEnsemble from_energy(EnergyBudget e, std::uint64_t messages) {
        return {messages, std::exp(-e.value())};
    }

    std::uint64_t messages;
    double overlap;
};

/// ((1/M) sqrt(1+(M-1)p) + (1-1/M) sqrt(1-p))^2.
inline double covariant_success(const SymmetricEnsemble &ens) {
    const double m = static_cast<double>(ens.messages);
    const double p = ens.overlap;
    const double amp =
        std::sqrt(1.0 + (m - 1.0) * p) / m + (1.0 - 1.0 / m) * std::sqrt(1.0 - p);
    return std::clamp(amp * amp, 1.0 / m, 1.0);
}

/**
 * 1 - covariant_success(M, e^{-E}) for a real codebook size M >= 1.
 *
 * Evaluated as (M-1) p^2 / (sqrt(q + M p) + sqrt(q))^2 with q = 1 - p, which
 * is algebraically identical and free of the 1 - s^2 cancellation, so the
 * bound stays accurate down to ~1e-300.
 */
inline double error_lower_bound(EnergyBudget e, double messages) {
    detail::require(messages >= 1.0, "error_lower_bound: M must be >= 1");
    const double p = std::exp(-e.value());
    const double q = -std::expm1(-e.value());
    const double denom = std::sqrt(q + messages * p) + std::sqrt(q);
    // Written as ((M-1)/denom) * (p/denom) * p to stay clear of underflow.
    return (messages - 1.0) / denom * (p / denom) * p;
}

inline double error_lower_bound(EnergyBudget e, std::uint64_t messages) {
    return error_lower_bound(e, static_cast<double>(messages));
}

/// Gram eigenvalues below this are treated as numerically coincident states.
constexpr double kGramSingularity = 1e-12;

/**
 * Square-root-measurement success probability for the symmetric ensemble,
 * ((1/M) sum_j sqrt(mu_j))^2 with mu_j the eigenvalues of the Gram matrix
 * G_ii = 1, G_ij = p. The eigenvalues come from a general symmetric solve;
 * those below kGramSingularity * M are rounding noise of exact zeros and are
 * dropped, since sqrt would inflate them to ~1e-8.
 */
inline double srm_success_oracle(const SymmetricEnsemble &ens) {
    detail::require(ens.messages >= 2 && ens.messages <= 256,
                    "srm_success_oracle: M must lie in [2, 256]");
    const auto m = static_cast<Eigen::Index>(ens.messages);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Constant(m, m, ens.overlap);
    gram.diagonal().setOnes();
    const auto dec = eigh(gram);
    const double floor = kGramSingularity * static_cast<double>(m);
    double root_sum = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        if (dec.eigenvalues(j) > floor) {
            root_sum += std::sqrt(dec.eigenvalues(j));
        }
    }
    const double amp = root_sum / static_cast<double>(m);
    return amp * amp;
}

struct PovmReport {
    /// max |sum_j Y_j - P_span| entrywise.
    double completeness_residual = 0.0;
    double success_probability = 0.0;
    /// Set when the Gram matrix had eigenvalues below kGramSingularity.
    bool ill_conditioned = false;
    std::string warning;
};

/**
 * Builds |f_i> in C^{M+1}, forms Y_j = |u_j><u_j| with u_j = sum_i
 * (G^{-1/2})_{ij} |f_i> (pseudo-inverse on the numerical span), and reports
 * the completeness residual against the projector onto span{f_i} together
 * with the average success probability (1/M) sum_i |<f_i|u_i>|^2.
 *
 * When every state coincides numerically (p -> 1) the blind-guessing value
 * 1/M is returned with a warning.
 */
inline PovmReport explicit_povm_check(const SymmetricEnsemble &ens) {
    detail::require(ens.messages >= 2 && ens.messages <= 64,
                    "explicit_povm_check: M must lie in [2, 64]");
    const auto m = static_cast<Eigen::Index>(ens.messages);
    const double p = ens.overlap;

    // Column i holds |f_{i+1}> in the basis |0>, |1>, ..., |M>.
    Eigen::MatrixXd states = Eigen::MatrixXd::Zero(m + 1, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        states(0, i) = std::sqrt(p);
        states(i + 1, i) = std::sqrt(1.0 - p);
    }
    const Eigen::MatrixXd gram = states.transpose() * states;
    const auto dec = eigh(gram);

    PovmReport report;
    Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(m);
    Eigen::Index rank = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
        if (dec.eigenvalues(j) > kGramSingularity) {
            inv_sqrt(j) = 1.0 / std::sqrt(dec.eigenvalues(j));
            ++rank;
        }
    }
    if (rank < m) {
        report.ill_conditioned = true;
        report.warning = "Gram matrix numerically singular; using pseudo-inverse on span";
    }
    if (rank <= 1 && p > 1.0 - kGramSingularity) {
        report.warning = "states numerically coincident; returning blind-guessing value";
        report.success_probability = 1.0 / static_cast<double>(m);
        return report;
    }

    const Eigen::MatrixXd gram_inv_sqrt =
        dec.eigenvectors * inv_sqrt.asDiagonal() * dec.eigenvectors.transpose();
    const Eigen::MatrixXd measurement = states * gram_inv_sqrt;

    // Projector onto span{f_i} from a rank-revealing QR, independent of G.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(states);
    qr.setThreshold(kGramSingularity);
    const Eigen::MatrixXd q_full = qr.householderQ();
    const Eigen::MatrixXd span_basis = q_full.leftCols(qr.rank());
    const Eigen::MatrixXd span_projector = span_basis * span_basis.transpose();
    const Eigen::MatrixXd povm_sum = measurement * measurement.transpose();
    report.completeness_residual = (povm_sum - span_projector).cwiseAbs().maxCoeff();

    double success = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double overlap = states.col(i).dot(measurement.col(i));
        success += overlap * overlap;
    }
    report.success_probability = success / static_cast<double>(m);
    return report;
}

//=========================================================================
// Asymptotic regimes of the bound with M = e^R
//=========================================================================

/// E - R -> -infinity.
struct RateDominant {};
/// E - R -> A.
struct Balanced {
    double a;
};
/// E - R -> +infinity.
struct EnergyDominant {};

using RegimeTag = std::variant<RateDominant, Balanced, EnergyDominant>;

/// 1 + 2e^A - 2 sqrt(e^A (1 + e^A)), computed as (sqrt(1+y) - sqrt(y))^2.
inline double balanced_coefficient(double a) {
    const double y = std::exp(a);
    const double gap = 1.0 / (std::sqrt(1.0 + y) + std::sqrt(y));
    return gap * gap;
}

/**
 * Closed-form regime approximations of error_lower_bound(E, e^R):
 *
 *   RateDominant:   e^{-E} - 2 sqrt(1-e^{-E}) e^{-(E+R)/2} + (2 - 3e^{-E}) e^{-R}
 *   Balanced(A):    (1 + 2e^A - 2 sqrt(e^A(1+e^A))) e^{-E}
 *   EnergyDominant: e^{-2E+R} / 4
 *
 * The rate-dominant series is the large-M expansion of the exact bound to
 * order 1/M.
 */
inline double asymptotic_error(EnergyBudget e, double rate, const RegimeTag &tag) {
    detail::require(rate >= 0.0 && std::isfinite(rate),
                    "asymptotic_error: R must be finite and >= 0");
    const double energy = e.value();
    const double p = std::exp(-energy);
    struct Visitor {
        double energy;
        double rate;
        double p;
        double operator()(RateDominant) const {
            const double q = -std::expm1(-energy);
            return p - 2.0 * std::sqrt(q) * std::exp(-(energy + rate) / 2.0) +
                   (2.0 - 3.0 * p) * std::exp(-rate);
        }
        double operator()(const Balanced &b) const {
            return balanced_coefficient(b.a) * p;
        }
        double operator()(EnergyDominant) const {
            return 0.25 * std::exp(-2.0 * energy + rate);
        }
    };
    return std::visit(Visitor{energy, rate, p}, tag);
}

/// Codebook size for a rate in nats, rounded up.
inline std::uint64_t messages_for_rate(double rate) {
    detail::require(rate >= 0.0 && rate < 43.0,
                    "messages_for_rate: R must lie in [0, 43)");
    return static_cast<std::uint64_t>(std::ceil(std::exp(rate)));
}

} // namespace photon_budget
