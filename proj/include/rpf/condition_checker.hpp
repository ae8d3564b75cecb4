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


// Numerical evaluation of the hypotheses behind the quasi-Gibbs property:
// boundedness of the compensated free potential, the correlation-function
// moments and tail integrals, the probability of the sets H_{r,k} and of
// their sufficient sets U, U-bar and V, and a direct probe of the two-sided
// density bound inside a window.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rpf/config_space.hpp"
#include "rpf/ensembles.hpp"
#include "rpf/interactions.hpp"

namespace rpf {

/// JSON value for a double; non-finite values become the strings "inf",
/// "-inf" or "nan" so they survive serialization.
nlohmann::json json_number(double x);

/// Structured result of one check: parameters, a table of rows, verdicts.
struct ConditionReport {
    std::string condition;  // "H4", "H5", "H3" or "QG-probe"
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json table = nlohmann::json::array();
    nlohmann::json verdicts = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::size_t replicas = 0;

    [[nodiscard]] nlohmann::json to_json() const;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Compensators for ensemble size p.
using CompensatorFamily = std::function<CompensatorSequence(std::size_t p)>;
/// p -> default_compensators(beta, p).
CompensatorFamily default_compensator_family(double beta);

/// beta sum_{x_i in S_rs} 1/x_i^ell, plus conj(m_r) - conj(m_s) when ell = 1.
/// s may be kInfinity. DomainError for a point at the origin in the annulus.
Point v_ell(const Configuration& config, int ell, const AnnulusSequence& seq, std::size_t r,
            std::size_t s, const CompensatorSequence& comp, double beta);

/// Replica mean of sum_{|x_i| >= 1} |x_i|^{-ell0} with its standard error.
Estimate tail_integral(std::span<const Configuration> samples, int ell0);

// ---------------------------------------------------------------------------
// Compensated free potential.

struct FreePotentialRow {
    std::size_t n = 0;
    double compensator = 0.0;
    double sup_residual = 0.0;  // sup_{|x| <= half_width} |Phi^n(x) - m x|
};

/// sup over a grid on [-half_width, half_width] of |Phi^n(x) - m(n) x| for
/// each n; the compensated free potential is bounded when these stay bounded.
std::vector<FreePotentialRow> free_potential_residuals(double beta, ScalingKind kind,
                                                       std::span<const std::size_t> n_grid,
                                                       const std::function<double(std::size_t)>& m,
                                                       double half_width);

// ---------------------------------------------------------------------------
// Moments and tail integrals.

struct H4Params {
    double beta = 2.0;
    std::vector<std::size_t> n_grid{50, 100, 200, 400};
    ScalingKind scaling = ScalingKind::softedge;
    int ell0 = 3;
    std::size_t r = 1;
    std::size_t s_max = 6;
    std::size_t replicas = 500;
    std::size_t p_max = 64;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    CompensatorFamily compensators;  // empty: default_compensator_family(beta)
};

/// For each n: the tail integral, and for 1 <= ell < ell0 the replica L1
/// norms of sup_{p <= p_max} |v^p_{ell,rs}| over the windows (r, s) with
/// r < s <= s_max and (s, inf) with r <= s <= s_max. Verdicts: tail integrals
/// bounded (max/min <= 3) and the ell = 2 norms over (s, inf) decreasing in s
/// on 2..s_max up to one standard error.
ConditionReport check_h4(const H4Params& params);

// ---------------------------------------------------------------------------
// The sets H_{r,k} and their sufficient sets.

/// Per-replica functionals behind H_{r,k}, U_{r,l,k} and U-bar_{r,ell0,k}.
struct HrkFunctionals {
    double certified = 0.0;        // sup_s lipschitz_bound (inf with a point on |y| = b_r)
    std::vector<double> moments;   // l = 1: sup_s |F_s|; l >= 2: sup_s |sum_{S_rs} 1/y^l|
    double shell_sum = 0.0;        // sum_{S_r,inf} 1/(|y|^ell0 - b_r^ell0)
};

struct HrkSettings {
    AnnulusSequence seq = AnnulusSequence::linear(8);
    std::size_t r = 1;
    std::size_t s_max = 6;
    int ell0 = 3;
    double beta = 2.0;
    CompensatorSequence comp;
};

/// The y-points are the points of `config` in S_{r,inf}; points inside S_r
/// are ignored. The sup over s runs over r+1..s_max and infinity.
HrkFunctionals hrk_functionals(const Configuration& config, const HrkSettings& settings);

struct HrkRow {
    double k = 0.0;
    double certified = 0.0;   // fraction with certified functional > k
    double sufficient = 0.0;  // fraction outside the intersection of the split U sets
    double split_bound = 0.0; // sum of the individual split-set fractions
};

/// Upper estimates of mu(H^c_{r,k}) for each k: (i) through the certified
/// envelope, (ii) through the split sets with thresholds
/// min(k/ell0, k/(ell0 c_x)) for l = 1, k/(ell0 c_x) for l >= 2 and
/// k/(ell0 c_y b_r^ell0) for U-bar.
std::vector<HrkRow> estimate_hrk_complement(std::span<const Configuration> samples,
                                            const HrkSettings& settings,
                                            std::span<const double> k_grid);

struct H3Params {
    double beta = 2.0;
    std::vector<std::size_t> n_grid{50, 100, 200, 400};
    ScalingKind scaling = ScalingKind::softedge;
    int ell0 = 3;
    std::size_t r = 1;
    std::size_t s_max = 6;
    std::vector<double> k_grid{1, 2, 4, 8, 16, 32, 64};
    std::size_t replicas = 500;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    CompensatorFamily compensators;
};

/// estimate_hrk_complement for each n. Verdicts: non-increasing in k and
/// below 0.1 at some k in the grid, for every n.
ConditionReport check_h3(const H3Params& params);

struct H5Row {
    double k = 0.0;
    std::vector<double> u_complement;  // l = 1..ell0-1, threshold k
    double ubar_complement = 0.0;
    double v2 = 0.0, v2_markov = 0.0, v2_tail_bound = 0.0;
    double v3 = 0.0, v3_bound = 0.0;
    double v4 = 0.0, v4_bound = 0.0;
};

/// Per k > 0: empirical mu(U^c_{r,l,k}), mu(U-bar^c_{r,ell0,k}) and the
/// decomposition through V_2, V_3, V_4 with the Chebyshev bounds computed
/// from the same samples.
std::vector<H5Row> h5_table(std::span<const Configuration> samples, const HrkSettings& settings,
                            std::span<const double> k_grid);

struct H5Params {
    double beta = 2.0;
    std::size_t n = 200;
    ScalingKind scaling = ScalingKind::softedge;
    int ell0 = 3;
    std::size_t r = 1;
    std::size_t s_max = 6;
    std::vector<double> k_grid{1, 2, 4, 8, 16, 32, 64};
    std::size_t replicas = 500;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    CompensatorFamily compensators;
};

ConditionReport check_h5(const H5Params& params);

// ---------------------------------------------------------------------------
// Density-ratio probe.

/// log of the conditional density of the inner points x given the outer
/// configuration, divided by exp(-H~_r(x)):
///   -[H_{S_r}(x) + Psi_{r,r inf}(x, outer)] + H~_{S_r}(x),
/// which is -Psi_{r,r inf}(x, outer) - m_inf . sum x for the log gas.
double probe_log_ratio(const PotentialPair& pp, const CompensatorSequence& comp,
                       const AnnulusSequence& seq, std::size_t r, const Configuration& inner,
                       const Configuration& outer);

struct Oscillation {
    double value = 0.0;        // sup - inf of probe_log_ratio over the grid
    std::size_t evaluated = 0;
    std::size_t skipped = 0;   // grid tuples with a non-finite ratio
};

/// Oscillation over all strictly increasing m-tuples of a grid of
/// `grid_points` cell centres on (-b_r, b_r).
Oscillation probe_oscillation(const PotentialPair& pp, const CompensatorSequence& comp,
                              const AnnulusSequence& seq, std::size_t r, std::size_t m_inside,
                              const Configuration& outer, std::size_t grid_points);

struct QgProbeParams {
    double beta = 2.0;
    std::vector<std::size_t> n_grid{50, 100, 200};
    std::size_t m_inside = 1;
    std::size_t r = 1;
    std::size_t outer = 100;
    std::size_t grid_points = 50;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    CompensatorFamily compensators;
};

/// For each n, soft-edge samples restricted to S_{r,inf} serve as outer
/// configurations. Reports the distribution of the oscillation, the change
/// under grid doubling, the interaction-free control (oscillation with psi = 0
/// and zero compensator) and the verdict p90(last n) <= 1.25 p90(first n).
ConditionReport quasi_gibbs_probe(const QgProbeParams& params);

}  // namespace rpf
