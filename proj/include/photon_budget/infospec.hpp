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
 * Finite-dimensional hypothesis-testing inequalities for pure-state
 * channels: positive-part (Neyman-Pearson) projectors of |psi><psi| - t sigma,
 * level projectors of sigma, and the gentle-measurement and sandwich bounds
 * that tie the two together.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace photon_budget {

/// Pure states psi_x with a prior P(x).
class PureEnsemble {
  public:
    PureEnsemble(std::vector<ComplexVector> states, std::vector<double> prior)
        : states_(std::move(states)), prior_(std::move(prior)) {
        detail::require(!states_.empty(), "PureEnsemble: at least one state required");
        detail::require(states_.size() == prior_.size(),
                        "PureEnsemble: one prior weight per state");
        const Eigen::Index dim = states_.front().size();
        detail::require(dim >= 2 && dim <= kMaxEighDim,
                        "PureEnsemble: dimension must lie in [2, 512]");
        double total = 0.0;
        for (std::size_t i = 0; i < states_.size(); ++i) {
            detail::require(states_[i].size() == dim, "PureEnsemble: dimension mismatch");
            detail::require(std::abs(states_[i].norm() - 1.0) <= 1e-12,
                            "PureEnsemble: states must be unit vectors");
            detail::require(prior_[i] >= 0.0, "PureEnsemble: prior must be nonnegative");
            total += prior_[i];
        }
        detail::require(std::abs(total - 1.0) <= 1e-12, "PureEnsemble: prior must sum to 1");
    }

    [[nodiscard]] Eigen::Index dim() const { return states_.front().size(); }
    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const std::vector<ComplexVector> &states() const { return states_; }
    [[nodiscard]] const std::vector<double> &prior() const { return prior_; }

  private:
    std::vector<ComplexVector> states_;
    std::vector<double> prior_;
};

/// Level threshold s and Neyman-Pearson threshold t' with t' > s > 0.
struct TestThresholds {
    TestThresholds(double level, double test) : level(level), test(test) {
        detail::require(level > 0.0 && test > level,
                        "TestThresholds: need t' > s > 0");
    }
    double level;
    double test;
};

/// sum_x P(x) |psi_x><psi_x|.
inline ComplexMatrix average_state(const PureEnsemble &ens) {
    const Eigen::Index d = ens.dim();
    ComplexMatrix sigma = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < ens.size(); ++i) {
        const auto &psi = ens.states()[i];
        sigma += ens.prior()[i] * psi * psi.adjoint();
    }
    return (sigma + sigma.adjoint()) / 2.0;
}

/// Eigenvalues at or below this multiple of max(1, t * |sigma|) count as zero.
constexpr double kPositivePartTolerance = 1e-12;

/// {|psi><psi| - t sigma > 0}, at most rank one.
struct PositivePart {
    /// Unit eigenvector of the positive eigenvalue; empty when there is none.
    ComplexVector vector;
    double eigenvalue = 0.0;
    /// Number of eigenvalues above tolerance (<= 1 by Weyl interlacing).
    Eigen::Index positive_count = 0;

    [[nodiscard]] bool is_zero() const { return vector.size() == 0; }
    [[nodiscard]] ComplexMatrix projector(Eigen::Index dim) const {
        if (is_zero()) {
            return ComplexMatrix::Zero(dim, dim);
        }
        return vector * vector.adjoint();
    }
};

inline ComplexMatrix test_operator(const ComplexVector &psi, const ComplexMatrix &sigma,
                                   double t) {
    return psi * psi.adjoint() - t * sigma;
}

/**
 * Spectral projector of |psi><psi| - t sigma onto its strictly positive
 * part. Ties at zero resolve to the smaller projector.
 */
inline PositivePart positive_part_projector(const ComplexVector &psi,
                                            const ComplexMatrix &sigma, double t) {
    detail::require(t > 0.0, "positive_part_projector: t must be > 0");
    detail::require(psi.size() == sigma.rows(), "positive_part_projector: dimension mismatch");
    const ComplexMatrix a = test_operator(psi, sigma, t);
    const auto dec = eigh(a);
    const double scale = std::max(1.0, t * sigma.cwiseAbs().maxCoeff());
    const double cutoff = kPositivePartTolerance * scale;
    PositivePart out;
    for (Eigen::Index j = 0; j < dec.eigenvalues.size(); ++j) {
        if (dec.eigenvalues(j) > cutoff) {
            ++out.positive_count;
        }
    }
    if (out.positive_count > 0) {
        out.vector = dec.eigenvectors.col(0);
        out.eigenvalue = dec.eigenvalues(0);
    }
    return out;
}

struct NpProbabilities {
    /// <psi|(I - Phi)|psi>, the missed-detection probability.
    double alpha = 1.0;
    /// Tr sigma Phi, the false-alarm probability.
    double beta = 0.0;
};

inline NpProbabilities np_probabilities(const ComplexVector &psi,
                                        const ComplexMatrix &sigma, double t) {
    const PositivePart part = positive_part_projector(psi, sigma, t);
    NpProbabilities out;
    if (part.is_zero()) {
        return out;
    }
    out.alpha = std::max(0.0, 1.0 - std::norm(part.vector.dot(psi)));
    out.beta = (part.vector.adjoint() * sigma * part.vector)(0, 0).real();
    return out;
}

/// B = {I - s sigma > 0}, the eigenspaces of sigma below 1/s.
struct LevelProjector {
    ComplexMatrix below;
    /// Tr sigma (I - B), the weight of eigenvalues >= 1/s.
    double upper_weight = 0.0;

    [[nodiscard]] ComplexMatrix above() const {
        return ComplexMatrix::Identity(below.rows(), below.cols()) - below;
    }
};

inline LevelProjector level_projector(const ComplexMatrix &sigma, double s) {
    detail::require(s > 0.0, "level_projector: s must be > 0");
    const auto dec = eigh(sigma);
    const Eigen::Index d = sigma.rows();
    LevelProjector out;
    out.below = ComplexMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double lambda = dec.eigenvalues(j);
        if (1.0 - s * lambda > 0.0) {
            const ComplexVector v = dec.eigenvectors.col(j);
            out.below += v * v.adjoint();
        } else {
            out.upper_weight += lambda;
        }
    }
    return out;
}

/// Absolute slack on every inequality checked below.
constexpr double kCheckSlack = 1e-10;

struct GentleReport {
    /// <phi|(I - B)|phi>.
    double overlap = 0.0;
    /// || phi phi^dag - B phi phi^dag B ||_1.
    double trace_norm_gap = 0.0;
    /// 2 sqrt(overlap).
    double bound = 0.0;
    /// s / t', the cap on overlap.
    double overlap_cap = 0.0;
    bool vacuous = false;
    bool holds = true;
};

/**
 * With phi the positive-part vector at t' and B the level projector at s:
 * overlap <= s/t' (since I - B <= s sigma and <phi|sigma|phi> <= 1/t') and
 * the gentle-measurement inequality gap <= 2 sqrt(overlap).
 */
inline GentleReport gentle_overlap_check(const ComplexVector &psi, const ComplexMatrix &sigma,
                                         const TestThresholds &th) {
    GentleReport r;
    r.overlap_cap = th.level / th.test;
    const PositivePart part = positive_part_projector(psi, sigma, th.test);
    if (part.is_zero()) {
        r.vacuous = true;
        return r;
    }
    const LevelProjector level = level_projector(sigma, th.level);
    const ComplexVector &phi = part.vector;
    r.overlap = std::max(0.0, (phi.adjoint() * level.above() * phi)(0, 0).real());
    const ComplexMatrix rank_one = phi * phi.adjoint();
    ComplexMatrix diff = rank_one - level.below * rank_one * level.below;
    diff = (diff + diff.adjoint()).eval() / 2.0;
    r.trace_norm_gap = trace_norm(diff);
    r.bound = 2.0 * std::sqrt(r.overlap);
    r.holds = r.overlap <= r.overlap_cap + kCheckSlack &&
              r.trace_norm_gap <= r.bound + kCheckSlack;
    return r;
}

struct SandwichCheckReport {
    /// sum_x P(x) alpha_x(t').
    double lhs = 0.0;
    /// Tr sigma {sigma >= 1/s} - 2 sqrt(s/t').
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
};

/**
 * sum_x P(x) Tr W_x {W_x - t' sigma <= 0} >= Tr sigma {sigma >= 1/s} - 2 sqrt(s/t')
 * with sigma the ensemble average.
 */
inline SandwichCheckReport sandwich_check(const PureEnsemble &ens, const TestThresholds &th) {
    const ComplexMatrix sigma = average_state(ens);
    SandwichCheckReport r;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        r.lhs += ens.prior()[i] * np_probabilities(ens.states()[i], sigma, th.test).alpha;
    }
    r.rhs = level_projector(sigma, th.level).upper_weight -
            2.0 * std::sqrt(th.level / th.test);
    r.slack = r.lhs - r.rhs;
    r.holds = r.slack >= -kCheckSlack;
    return r;
}

struct ProjectedOverlapReport {
    /// <u|sigma|u>, u = B psi / |B psi|.
    double value = 0.0;
    /// 1/s.
    double bound = 0.0;
    bool vacuous = false;
    bool holds = true;
};

inline ProjectedOverlapReport projected_overlap_check(const ComplexVector &psi,
                                                      const ComplexMatrix &sigma, double s) {
    ProjectedOverlapReport r;
    r.bound = 1.0 / s;
    const LevelProjector level = level_projector(sigma, s);
    const ComplexVector projected = level.below * psi;
    const double norm = projected.norm();
    if (norm <= 1e-12) {
        r.vacuous = true;
        return r;
    }
    const ComplexVector u = projected / norm;
    r.value = (u.adjoint() * sigma * u)(0, 0).real();
    r.holds = r.value <= r.bound + kCheckSlack * std::max(1.0, r.bound);
    return r;
}

} // namespace photon_budget
