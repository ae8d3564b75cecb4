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


// Empirical one- and two-point correlation functions from replica samples,
// with replica-level standard errors, and z-score comparison against a
// predicted density.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rpf/config_space.hpp"

namespace rpf {

/// Equal bins of about `width` covering [lo, hi].
std::vector<double> uniform_edges(double lo, double hi, double width);

/// Order 1: estimate[i] for bin i. Order 2: estimate[i * bins + j] for the
/// pair of bins (i, j), symmetric.
struct BinnedEstimate {
    int order = 1;
    std::vector<double> edges;
    std::vector<double> estimate;
    std::vector<double> std_error;
    std::size_t replicas = 0;

    [[nodiscard]] std::size_t bins() const noexcept { return edges.empty() ? 0 : edges.size() - 1; }
    [[nodiscard]] double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
    [[nodiscard]] double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
};

/// Per-bin sums of per-replica values and of their squares. Two accumulators
/// over the same bins merge by addition, so replicas can be reduced in any
/// grouping.
class CorrelationAccumulator {
public:
    CorrelationAccumulator(std::vector<double> edges, int order);

    void add(const Configuration& replica);
    void merge(const CorrelationAccumulator& other);
    [[nodiscard]] std::size_t replicas() const noexcept { return replicas_; }

    /// Throws ArgumentError with fewer than two replicas.
    [[nodiscard]] BinnedEstimate finish() const;

private:
    std::vector<double> edges_;
    int order_;
    std::size_t replicas_ = 0;
    std::vector<double> sum_;
    std::vector<double> sum_sq_;
};

/// Factorial-moment estimator: order 1 uses config(A)/|A|, order 2 uses
/// config(A)config(B)/(|A||B|) off the diagonal and config(A)(config(A)-1)/|A|^2
/// on it. Points are binned by their real part.
BinnedEstimate estimate_correlation(std::span<const Configuration> samples, int order,
                                    const std::vector<double>& edges);

struct DeviationReport {
    std::vector<double> prediction;
    std::vector<double> z;
    double max_abs_z = 0.0;
    double fraction_within_3 = 0.0;
};

/// z = (estimate - prediction) / stderr per bin (pair of bins for order 2).
/// A bin with zero standard error and a nonzero deviation uses the
/// one-count resolution 1/(|A| R) (1/(|A||B| R) for pairs) instead.
DeviationReport compare_to_prediction(const BinnedEstimate& est, std::span<const double> prediction);
/// Prediction evaluated at bin centres.
DeviationReport compare_to_prediction(const BinnedEstimate& est,
                                      const std::function<double(double)>& predicted);
DeviationReport compare_to_prediction(const BinnedEstimate& est,
                                      const std::function<double(double, double)>& predicted);

/// Bin averages of a density by 8-point Gauss-Legendre per bin (per axis).
std::vector<double> bin_averaged(const BinnedEstimate& est,
                                 const std::function<double(double)>& density);
std::vector<double> bin_averaged(const BinnedEstimate& est,
                                 const std::function<double(double, double)>& density);

}  // namespace rpf
