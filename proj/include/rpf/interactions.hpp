/*
   Copyright 2026 The rpf-lab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


// Free potentials, the logarithmic pair interaction, block interaction sums
// between annuli, compensated interactions and Hamiltonians, the Taylor
// expansion of the log interaction about the origin, and the Lipschitz
// functional that defines the sets H_{r,k} together with its certified upper
// bound.
//
// Compensators enter through the planar dot product x . m = Re[x conj(m)],
// which for real points is ordinary multiplication.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rpf/config_space.hpp"
#include "rpf/ensembles.hpp"

namespace rpf {

/// Linear compensators m_s (s = 1, 2, ...) and their limit m_inf for one
/// ensemble size. Indices without an explicit value, including kInfinity,
/// resolve to m_inf.
struct CompensatorSequence {
    Point m_inf{};
    std::vector<Point> by_index;  // by_index[s] is m_s; entry 0 unused

    [[nodiscard]] Point at(std::size_t s) const noexcept {
        return s < by_index.size() ? by_index[s] : m_inf;
    }

    static CompensatorSequence constant(Point m) { return {m, {}}; }
};

/// Default choice m_s = m_inf = beta n^{1/3} for every s.
CompensatorSequence default_compensators(double beta, std::size_t n);

/// Free potential and symmetric pair interaction.
struct PotentialPair {
    std::function<double(const Point&)> phi;
    std::function<double(const Point&, const Point&)> psi;
    double beta = 2.0;
};

/// -beta log|x - y|; +inf at x = y for beta > 0 (-inf for beta < 0, 0 for beta = 0).
double log_potential(const Point& x, const Point& y, double beta);

/// Confinement of the scaled ensemble (real part of the point) with the log
/// interaction.
PotentialPair log_gas(double beta, std::size_t n, ScalingKind kind);
/// Same confinement, no interaction.
PotentialPair free_particles(double beta, std::size_t n, ScalingKind kind);

/// H_W = sum_{x_i in W} phi(x_i) + sum_{i<j, x_i,x_j in W} psi(x_i, x_j).
double hamiltonian(const PotentialPair& pp, const Window& w, const Configuration& config);

/// sum_{x_i in S_rs, y_j in S_tu} psi(x_i, y_j), plus Re[(sum x_i) conj(m_t - m_u)]
/// when `compensated`. Requires r < s <= t < u (u may be kInfinity); r = 0
/// makes the x block the ball S_s.
double block_interaction(const Configuration& x, const Configuration& y,
                         const AnnulusSequence& seq, std::size_t r, std::size_t s,
                         std::size_t t, std::size_t u, const PotentialPair& pp,
                         const CompensatorSequence& comp, bool compensated);

/// hamiltonian with phi(x) replaced by phi(x) - Re[x conj(m_inf)] on the window.
double compensated_hamiltonian(const PotentialPair& pp, const CompensatorSequence& comp,
                               const Window& w, const Configuration& config);

struct TaylorTail {
    double value = 0.0;
    double remainder = 0.0;  // bound on |full series - value|
};

/// beta sum_j sum_{l=1}^{order} (1/l) Re[(x/y_j)^l] and the remainder bound
/// |beta| sum_j q_j^{order+1} / ((order+1)(1 - q_j)), q_j = |x|/|y_j|.
/// DomainError unless |x| < |y_j| for every j.
TaylorTail taylor_tail(const Point& x, std::span<const Point> y, double beta, int order);

/// Compensated interaction of a single point x in S_r with the y-points in
/// S_rs, using the compensators (m_r, m_s).
double compensated_interaction(const Point& x, const Configuration& y, const AnnulusSequence& seq,
                               std::size_t r, std::size_t s, const CompensatorSequence& comp,
                               double beta);

/// |Psi~_{r,rs}(x, y) - Psi~_{r,rs}(w, y)| / |x - w| for x != w in S_r.
double lipschitz_ratio(const Point& x, const Point& w, const Configuration& y,
                       const AnnulusSequence& seq, std::size_t r, std::size_t s,
                       const CompensatorSequence& comp, double beta);

/// sup_{x != w in |z| < radius} |x^l - w^l| / (l |x - w|) for 1 <= l < ell0,
/// times |beta|: |beta| max(1, radius^{ell0 - 2}).
double moment_constant(double beta, double radius, int ell0);
/// Constant in front of sum_i b^ell0 / (|y_i|^ell0 - b^ell0) that bounds the
/// orders l >= ell0 of the expansion: ell0 |beta| / radius. The per-order
/// sup of |x^l - w^l| / (radius^l l |x - w|) is 1/radius, and
/// sum_{l >= ell0} q^l = q^ell0 / (1 - q) <= ell0 q^ell0 / (1 - q^ell0).
double tail_constant(double beta, double radius, int ell0);
/// The per-order sup alone, |beta| / radius. With it in place of
/// tail_constant the bound is not valid when some |y_i| is close to radius.
double per_order_tail_constant(double beta, double radius);

struct LipschitzBound {
    double value = 0.0;
    double first_order = 0.0;   // |beta sum 1/y_i + conj(m_r) - conj(m_s)|
    double moments = 0.0;       // moment_constant * sum_{l=2}^{ell0-1} |sum 1/y_i^l|
    double tail = 0.0;          // tail_constant * sum b_r^ell0 / (|y_i|^ell0 - b_r^ell0)
    double moment_const = 0.0;
    double tail_const = 0.0;
    /// Same bound with per_order_tail_constant in the tail term.
    double per_order_value = 0.0;
};

/// Upper bound for the sup over x != w in S_r of lipschitz_ratio, summing
/// over the y-points in S_rs. DomainError when some y-point has |y| <= b_r
/// or ell0 < 2.
LipschitzBound lipschitz_bound(const Configuration& y, const AnnulusSequence& seq, std::size_t r,
                               std::size_t s, const CompensatorSequence& comp, double beta,
                               int ell0);

struct GridSup {
    double value = 0.0;
    std::size_t points_per_axis = 0;
    int refinements = 0;
    double last_relative_change = 0.0;
};

/// Maximum of lipschitz_ratio over pairs of points of a grid on S_r (a line
/// grid on (-b_r, b_r), or a square grid clipped to the disc when `planar`).
/// The grid is doubled until the maximum changes by less than 1% or
/// `max_refinements` doublings were made.
GridSup grid_sup_lipschitz_ratio(const Configuration& y, const AnnulusSequence& seq, std::size_t r,
                                 std::size_t s, const CompensatorSequence& comp, double beta,
                                 std::size_t points_per_axis = 50, bool planar = false,
                                 int max_refinements = 3);

/// sum_{y_i in W} 1 / y_i^l.
Point inverse_power_sum(const Configuration& y, const Window& w, int ell);

// Randomized property checks, shared by the CLI and the acceptance suite.

struct TaylorCheckSummary {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double max_error = 0.0;            // max |series - direct difference|
    double max_error_over_bound = 0.0; // max of error / (remainder + rounding slack)
};

/// Random x and y-configurations (1 to 6 points) with max_j |x|/|y_j| <=
/// max_ratio. A trial violates when the truncated series differs from
/// Psi(x, y) - Psi(0, y) by more than the remainder bound plus a rounding
/// slack of 1e-13 (1 + |beta| sum_j |log|y_j||).
TaylorCheckSummary taylor_check(std::size_t trials, int order, double beta, double max_ratio,
                                std::uint64_t seed, bool planar = false);

struct LipschitzCheckSummary {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double max_sup_over_bound = 0.0;  // max over trials of grid sup / bound
    std::size_t per_order_violations = 0;  // against LipschitzBound::per_order_value
    double max_sup_over_per_order_bound = 0.0;
};

/// Random y-configurations (1 to 8 points with b_r < |y_j| <= 4 b_r),
/// random compensators and outer index s in {r+1, ..., r+4, inf}. A trial
/// violates when the grid sup of lipschitz_ratio exceeds lipschitz_bound by
/// more than a relative 1e-9.
LipschitzCheckSummary lipschitz_check(std::size_t trials, double beta, int ell0, std::size_t r,
                                      std::size_t grid_points, std::uint64_t seed,
                                      std::size_t workers = 1, bool planar = false);

}  // namespace rpf
