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


// Finite-N Dyson log-gas dynamics
//
//   dX^i = dB^i - (1/2) Phi'(X^i) dt + (beta/2) sum_{j != i} dt / (X^i - X^j)
//
// by Euler-Maruyama. A step that would break the strict ordering is redone
// as two half steps whose Brownian increments are the Brownian-bridge
// refinement of the original one, so the driving path does not change.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rpf/ensembles.hpp"

namespace rpf {

/// Maximum number of nested halvings of one time step.
inline constexpr int kMaxHalvings = 20;

struct SdeState {
    std::vector<double> positions;  // strictly increasing
    double time = 0.0;
    std::size_t accepted_steps = 0;
    std::size_t halvings = 0;
};

struct SdeOptions {
    std::size_t record_every = 1;
    bool zero_noise = false;        // drift only
    bool flip_confinement = false;  // confinement force with the wrong sign
};

/// -(1/2) Phi'(x_i) + (beta/2) sum_{j != i} 1/(x_i - x_j), Phi the confinement
/// of `kind` for size n. DomainError on coincident positions.
std::vector<double> drift(std::span<const double> positions, double beta, std::size_t n,
                          ScalingKind kind, bool flip_confinement = false);

struct Trajectory {
    std::vector<double> times;  // k * dt at the recorded steps k
    std::vector<std::vector<double>> states;
    std::size_t accepted_steps = 0;
    std::size_t halvings = 0;
};

/// ceil(T/dt) equal steps of size at most dt ending at time T, from `init`,
/// recording every options.record_every steps (step 0 and the last
/// included). Deterministic in `seed`; the increment of particle i in step k
/// depends only on (seed, k, i). NumericalError with a
/// state dump when a step still fails after kMaxHalvings halvings.
Trajectory simulate_isde(const SdeState& init, double beta, std::size_t n, ScalingKind kind,
                         double dt, double T, std::uint64_t seed, const SdeOptions& options = {});

/// 1e-3 times the squared mean gap of the configuration (1e-3 for one point).
double default_time_step(std::span<const double> positions);

struct InvarianceRow {
    std::string statistic;
    double initial = 0.0;
    double final = 0.0;
    double std_error = 0.0;  // of final - initial, over replicas
    double z = 0.0;
};

struct InvarianceReport {
    std::vector<InvarianceRow> rows;
    double max_abs_z = 0.0;
    std::size_t halvings = 0;
};

/// Replicas start from exact ensemble samples (sample_replica with `seed`),
/// run for time T, and the initial and final laws are compared through the
/// largest point (mean, variance), sum x_i^2 (mean, variance) and the
/// fraction of nearest-neighbour gaps below the pooled initial gap
/// quantiles 0.1, 0.5, 0.9. Differences are paired per replica; variances
/// use a jackknife over replicas.
InvarianceReport invariance_report(double beta, std::size_t n, ScalingKind kind, double dt,
                                   double T, std::size_t replicas, std::uint64_t seed,
                                   std::size_t workers = 1, bool flip_confinement = false);

struct OuCheck {
    double variance = 0.0;
    double std_error = 0.0;
    double expected = 0.0;  // 2 / beta
    double z = 0.0;
};

/// n = 1 raw dynamics from x = 0 to time T, one independent path per replica;
/// compares the final variance with the stationary value 2/beta.
OuCheck ou_variance_check(double beta, double dt, double T, std::size_t replicas,
                          std::uint64_t seed, std::size_t workers = 1);

}  // namespace rpf
