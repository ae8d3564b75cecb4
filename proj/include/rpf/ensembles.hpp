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

// Gaussian beta-ensembles: samplers, bulk / soft-edge scalings and the
// labeled log-density
//
//   prod_{i<j} |x_i - x_j|^beta * exp(-(beta/4) sum x_i^2)
//
// together with its scaled forms.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpf/config_space.hpp"

namespace rpf {

enum class ScalingKind { raw, bulk, softedge };
enum class SamplerMethod { dense, tridiagonal };

std::string to_string(ScalingKind kind);
std::string to_string(SamplerMethod method);
ScalingKind parse_scaling(const std::string& name);
SamplerMethod parse_method(const std::string& name);

struct EnsembleSpec {
    double beta = 2.0;
    std::size_t n = 1;
    ScalingKind scaling = ScalingKind::raw;
    SamplerMethod method = SamplerMethod::tridiagonal;
    std::uint64_t seed = 0;

    /// Throws ArgumentError on n == 0, beta <= 0, or dense with beta not in {1,2,4}.
    void validate() const;
};

/// Unscaled eigenvalues (ascending) of one draw. Deterministic in spec.seed.
Configuration sample_gaussian_beta(const EnsembleSpec& spec);

/// Replica `replica` of the master seed: eigenvalues with spec.scaling applied.
/// Each replica owns the stream stream_key(spec.seed, replica).
Configuration sample_replica(const EnsembleSpec& spec, std::uint64_t replica);

/// Replicas 0..count-1, computed on `workers` threads. The result does not
/// depend on `workers`.
std::vector<Configuration> sample_replicas(const EnsembleSpec& spec, std::size_t count,
                                           std::size_t workers = 1);

/// raw: identity; bulk: x / sqrt(n); softedge: n^{1/6} (x - 2 sqrt(n)).
Configuration apply_scaling(const Configuration& eigs, std::size_t n, ScalingKind kind);
double scale_point(double lambda, std::size_t n, ScalingKind kind);
double unscale_point(double x, std::size_t n, ScalingKind kind);

/// Confinement Phi^n(x) in the exponent of the scaled density:
///   raw      (beta/4) x^2
///   bulk     (beta/(4n)) x^2
///   softedge (beta/4) (n^{-1/3} x^2 + 4 n^{1/3} x)   [constant beta*n dropped]
double confinement(double beta, std::size_t n, ScalingKind kind, double x);
double confinement_derivative(double beta, std::size_t n, ScalingKind kind, double x);

/// log of the unnormalized labeled density for any number of points:
/// beta sum_{i<j} log|x_i - x_j| - sum Phi^n(x_i). -inf on coincident points.
double log_boltzmann(double beta, std::size_t n, ScalingKind kind, const Configuration& config);

/// log_boltzmann with the cardinality check config.size() == n (ArgumentError
/// otherwise) and the real-points precondition.
double log_density(double beta, std::size_t n, ScalingKind kind, const Configuration& config);

}  // namespace rpf
