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


#include "rpf/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rpf/error.hpp"

namespace rpf {

namespace {

constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

void check_edges(const std::vector<double>& edges) {
    if (edges.size() < 2) throw ArgumentError("need at least one bin");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1])) throw ArgumentError("bin edges must be strictly increasing");
}

// Bin index of x, or -1 outside [edges.front(), edges.back()).
long locate(const std::vector<double>& edges, double x) {
    if (!(x >= edges.front() && x < edges.back())) return -1;
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    return static_cast<long>(it - edges.begin()) - 1;
}

}  // namespace

std::vector<double> uniform_edges(double lo, double hi, double width) {
    if (!(hi > lo) || !(width > 0.0)) throw ArgumentError("uniform_edges: need lo < hi, width > 0");
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / width));
    if (count == 0) throw ArgumentError("uniform_edges: width exceeds range");
    std::vector<double> edges(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
        edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count);
    return edges;
}

CorrelationAccumulator::CorrelationAccumulator(std::vector<double> edges, int order)
    : edges_(std::move(edges)), order_(order) {
    check_edges(edges_);
    if (order_ != 1 && order_ != 2) throw ArgumentError("correlation order must be 1 or 2");
    const std::size_t nb = edges_.size() - 1;
    const std::size_t cells = order_ == 1 ? nb : nb * nb;
    sum_.assign(cells, 0.0);
    sum_sq_.assign(cells, 0.0);
}

void CorrelationAccumulator::add(const Configuration& replica) {
    const std::size_t nb = edges_.size() - 1;
    std::vector<double> counts(nb, 0.0);
    for (const auto& p : replica) {
        const long b = locate(edges_, p.real());
        if (b >= 0) counts[static_cast<std::size_t>(b)] += 1.0;
    }
    // Raw counts keep both sums exact integers; the bin volume is applied in finish().
    if (order_ == 1) {
        for (std::size_t i = 0; i < nb; ++i) {
            sum_[i] += counts[i];
            sum_sq_[i] += counts[i] * counts[i];
        }
    } else {
        for (std::size_t i = 0; i < nb; ++i) {
            for (std::size_t j = 0; j < nb; ++j) {
                const double pairs = i == j ? counts[i] * (counts[i] - 1.0) : counts[i] * counts[j];
                sum_[i * nb + j] += pairs;
                sum_sq_[i * nb + j] += pairs * pairs;
            }
        }
    }
    ++replicas_;
}

void CorrelationAccumulator::merge(const CorrelationAccumulator& other) {
    if (other.order_ != order_ || other.edges_ != edges_)
        throw ArgumentError("cannot merge accumulators over different bins");
    for (std::size_t i = 0; i < sum_.size(); ++i) {
        sum_[i] += other.sum_[i];
        sum_sq_[i] += other.sum_sq_[i];
    }
    replicas_ += other.replicas_;
}

BinnedEstimate CorrelationAccumulator::finish() const {
    if (replicas_ < 2) throw ArgumentError("correlation estimate needs at least two replicas");
    BinnedEstimate out;
    out.order = order_;
    out.edges = edges_;
    out.replicas = replicas_;
    const double r = static_cast<double>(replicas_);
    out.estimate.resize(sum_.size());
    out.std_error.resize(sum_.size());
    const std::size_t nb = edges_.size() - 1;
    for (std::size_t c = 0; c < sum_.size(); ++c) {
        const double vol = order_ == 1 ? out.width(c) : out.width(c / nb) * out.width(c % nb);
        // The jackknife error of a mean reduces to the sample standard error.
        const double var = std::max(0.0, (sum_sq_[c] - sum_[c] * sum_[c] / r) / (r - 1.0));
        out.estimate[c] = sum_[c] / r / vol;
        out.std_error[c] = std::sqrt(var / r) / vol;
    }
    return out;
}

BinnedEstimate estimate_correlation(std::span<const Configuration> samples, int order,
                                    const std::vector<double>& edges) {
    if (samples.empty()) throw ArgumentError("estimate_correlation: empty sample list");
    CorrelationAccumulator acc(edges, order);
    for (const auto& s : samples) acc.add(s);
    return acc.finish();
}

DeviationReport compare_to_prediction(const BinnedEstimate& est, std::span<const double> prediction) {
    if (prediction.size() != est.estimate.size())
        throw ArgumentError("prediction size does not match the estimate");
    const std::size_t nb = est.bins();
    DeviationReport rep;
    rep.prediction.assign(prediction.begin(), prediction.end());
    rep.z.resize(prediction.size());
    std::size_t within = 0;
    for (std::size_t c = 0; c < prediction.size(); ++c) {
        const double dev = est.estimate[c] - prediction[c];
        double se = est.std_error[c];
        if (se == 0.0 && dev != 0.0) {
            double area = est.order == 1 ? est.width(c) : est.width(c / nb) * est.width(c % nb);
            se = 1.0 / (area * static_cast<double>(est.replicas));
        }
        const double z = dev == 0.0 ? 0.0 : dev / se;
        rep.z[c] = z;
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(z));
        if (std::abs(z) <= 3.0) ++within;
    }
    rep.fraction_within_3 =
        prediction.empty() ? 1.0 : static_cast<double>(within) / static_cast<double>(prediction.size());
    return rep;
}

DeviationReport compare_to_prediction(const BinnedEstimate& est,
                                      const std::function<double(double)>& predicted) {
    if (est.order != 1) throw ArgumentError("one-point prediction given for an order-2 estimate");
    std::vector<double> pred(est.bins());
    for (std::size_t i = 0; i < pred.size(); ++i) pred[i] = predicted(est.center(i));
    return compare_to_prediction(est, pred);
}

DeviationReport compare_to_prediction(const BinnedEstimate& est,
                                      const std::function<double(double, double)>& predicted) {
    if (est.order != 2) throw ArgumentError("two-point prediction given for an order-1 estimate");
    const std::size_t nb = est.bins();
    std::vector<double> pred(nb * nb);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) pred[i * nb + j] = predicted(est.center(i), est.center(j));
    return compare_to_prediction(est, pred);
}

std::vector<double> bin_averaged(const BinnedEstimate& est,
                                 const std::function<double(double)>& density) {
    std::vector<double> out(est.bins());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double c = est.center(i), h = 0.5 * est.width(i);
        double s = 0.0;
        for (std::size_t q = 0; q < kGaussNodes.size(); ++q)
            s += kGaussWeights[q] * density(c + h * kGaussNodes[q]);
        out[i] = 0.5 * s;
    }
    return out;
}

std::vector<double> bin_averaged(const BinnedEstimate& est,
                                 const std::function<double(double, double)>& density) {
    const std::size_t nb = est.bins();
    std::vector<double> out(nb * nb);
    for (std::size_t i = 0; i < nb; ++i) {
        const double ci = est.center(i), hi = 0.5 * est.width(i);
        for (std::size_t j = i; j < nb; ++j) {
            const double cj = est.center(j), hj = 0.5 * est.width(j);
            double s = 0.0;
            for (std::size_t p = 0; p < kGaussNodes.size(); ++p)
                for (std::size_t q = 0; q < kGaussNodes.size(); ++q)
                    s += kGaussWeights[p] * kGaussWeights[q] *
                         density(ci + hi * kGaussNodes[p], cj + hj * kGaussNodes[q]);
            out[i * nb + j] = 0.25 * s;
            out[j * nb + i] = 0.25 * s;
        }
    }
    return out;
}

}  // namespace rpf
