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


#include "rpf/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "rpf/error.hpp"
#include "rpf/io.hpp"
#include "rpf/parallel.hpp"
#include "rpf/rng.hpp"
#include "rpf/stats.hpp"

namespace rpf {

namespace {

constexpr std::uint64_t kNoiseSalt = 0xD1B54A32D192ED03ull;
constexpr std::uint64_t kNodeBits = 21;

bool strictly_increasing(std::span<const double> x) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1])) return false;
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

class Stepper {
public:
    Stepper(double beta, std::size_t n, ScalingKind kind, std::uint64_t key, const SdeOptions& opt)
        : beta_(beta), n_(n), kind_(kind), key_(key), opt_(opt) {}

    // Advances x over one step of length h with increments db (node `node`).
    void advance(std::vector<double>& x, double h, const std::vector<double>& db,
                 std::uint64_t step, std::uint64_t node, int depth) {
        const auto f = drift(x, beta_, n_, kind_, opt_.flip_confinement);
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + f[i] * h + db[i];
        if (strictly_increasing(y)) {
            x = std::move(y);
            return;
        }
        if (depth == kMaxHalvings) {
            std::ostringstream msg;
            msg << "SDE step " << step << " failed after " << kMaxHalvings
                << " halvings; state:";
            for (double v : x) msg << ' ' << format_double(v);
            throw NumericalError(msg.str());
        }
        ++halvings_;
        // Brownian bridge: the first half increment is N(db/2, h/4).
        std::vector<double> first(x.size()), second(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double z =
                opt_.zero_noise ? 0.0 : normal_at(key_, step, (std::uint64_t{i} << kNodeBits) | node);
            first[i] = 0.5 * db[i] + 0.5 * std::sqrt(h) * z;
            second[i] = db[i] - first[i];
        }
        advance(x, 0.5 * h, first, step, 2 * node, depth + 1);
        advance(x, 0.5 * h, second, step, 2 * node + 1, depth + 1);
    }

    std::vector<double> increments(std::size_t count, double h, std::uint64_t step) const {
        std::vector<double> db(count, 0.0);
        if (opt_.zero_noise) return db;
        const double sh = std::sqrt(h);
        for (std::size_t i = 0; i < count; ++i)
            db[i] = sh * normal_at(key_, step, std::uint64_t{i} << kNodeBits);
        return db;
    }

    [[nodiscard]] std::size_t halvings() const noexcept { return halvings_; }

private:
    double beta_;
    std::size_t n_;
    ScalingKind kind_;
    std::uint64_t key_;
    SdeOptions opt_;
    std::size_t halvings_ = 0;
};

std::vector<double> gaps(std::span<const double> x) {
    std::vector<double> g;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) g.push_back(x[i + 1] - x[i]);
    return g;
}

double sum_squares(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

// Jackknife standard error of stat(values), leaving out one replica at a time.
double jackknife(std::size_t count, const std::function<double(std::size_t skip)>& stat) {
    if (count < 3) return 0.0;
    std::vector<double> loo(count);
    for (std::size_t i = 0; i < count; ++i) loo[i] = stat(i);
    const double m = stats::mean(loo);
    double acc = 0.0;
    for (double v : loo) acc += (v - m) * (v - m);
    const double c = static_cast<double>(count);
    return std::sqrt((c - 1.0) / c * acc);
}

double variance_skipping(const std::vector<double>& v, std::size_t skip) {
    std::vector<double> w;
    w.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i != skip) w.push_back(v[i]);
    return stats::variance(w);
}

double z_of(double diff, double se) {
    if (diff == 0.0) return 0.0;
    return diff / se;
}

}  // namespace

std::vector<double> drift(std::span<const double> positions, double beta, std::size_t n,
                          ScalingKind kind, bool flip_confinement) {
    const std::size_t m = positions.size();
    std::vector<double> f(m);
    const double sign = flip_confinement ? 1.0 : -1.0;
    for (std::size_t i = 0; i < m; ++i) {
        double rep = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double d = positions[i] - positions[j];
            if (d == 0.0) throw DomainError("drift: coincident positions");
            rep += 1.0 / d;
        }
        f[i] = sign * 0.5 * confinement_derivative(beta, n, kind, positions[i]) + 0.5 * beta * rep;
    }
    return f;
}

Trajectory simulate_isde(const SdeState& init, double beta, std::size_t n, ScalingKind kind,
                         double dt, double T, std::uint64_t seed, const SdeOptions& options) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("dt must be positive");
    if (!(T >= dt)) throw ArgumentError("T must be at least dt");
    if (options.record_every == 0) throw ArgumentError("record_every must be positive");
    if (!(beta > 0.0)) throw ArgumentError("beta must be positive");
    std::vector<double> x = init.positions;
    std::sort(x.begin(), x.end());
    if (!strictly_increasing(x)) throw DomainError("initial positions must be distinct and finite");

    // Step count rounded up; the step is shrunk so the run ends exactly at T.
    const auto steps = static_cast<std::uint64_t>(std::ceil(T / dt - 1e-9));
    dt = T / static_cast<double>(steps);
    Stepper stepper(beta, n, kind, mix64(seed ^ kNoiseSalt), options);
    Trajectory traj;
    traj.times.push_back(init.time);
    traj.states.push_back(x);
    for (std::uint64_t k = 0; k < steps; ++k) {
        stepper.advance(x, dt, stepper.increments(x.size(), dt, k), k, 1, 0);
        if ((k + 1) % options.record_every == 0 || k + 1 == steps) {
            traj.times.push_back(init.time + static_cast<double>(k + 1) * dt);
            traj.states.push_back(x);
        }
    }
    traj.accepted_steps = steps;
    traj.halvings = stepper.halvings();
    return traj;
}

double default_time_step(std::span<const double> positions) {
    if (positions.size() < 2) return 1e-3;
    const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
    const double gap = (*hi - *lo) / static_cast<double>(positions.size() - 1);
    return gap > 0.0 ? 1e-3 * gap * gap : 1e-3;
}

InvarianceReport invariance_report(double beta, std::size_t n, ScalingKind kind, double dt,
                                   double T, std::size_t replicas, std::uint64_t seed,
                                   std::size_t workers, bool flip_confinement) {
    if (replicas < 3) throw ArgumentError("invariance_report needs at least three replicas");
    if (!(T >= 0.0)) throw ArgumentError("T must be non-negative");
    if (n < 2) throw ArgumentError("invariance_report needs n >= 2");
    EnsembleSpec spec;
    spec.beta = beta;
    spec.n = n;
    spec.scaling = kind;
    spec.seed = seed;
    spec.validate();

    std::vector<std::vector<double>> start(replicas), end(replicas);
    std::vector<std::size_t> halvings(replicas, 0);
    SdeOptions opt;
    opt.flip_confinement = flip_confinement;
    opt.record_every = std::numeric_limits<std::size_t>::max();
    parallel_for(replicas, workers, [&](std::size_t i) {
        start[i] = sample_replica(spec, i).reals();
        if (T == 0.0) {
            end[i] = start[i];
            return;
        }
        SdeState s0;
        s0.positions = start[i];
        auto traj = simulate_isde(s0, beta, n, kind, dt, T, stream_key(seed, i), opt);
        end[i] = std::move(traj.states.back());
        halvings[i] = traj.halvings;
    });

    InvarianceReport rep;
    for (std::size_t h : halvings) rep.halvings += h;
    auto add_mean = [&](const std::string& name, const std::vector<double>& a,
                        const std::vector<double>& b) {
        std::vector<double> d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) d[i] = b[i] - a[i];
        const double diff = stats::mean(d);
        const double se = stats::standard_error(d);
        rep.rows.push_back({name, stats::mean(a), stats::mean(b), se, z_of(diff, se)});
    };
    auto add_variance = [&](const std::string& name, const std::vector<double>& a,
                            const std::vector<double>& b) {
        const double va = stats::variance(a), vb = stats::variance(b);
        const double se = jackknife(a.size(), [&](std::size_t skip) {
            return variance_skipping(b, skip) - variance_skipping(a, skip);
        });
        rep.rows.push_back({name, va, vb, se, z_of(vb - va, se)});
    };

    std::vector<double> top_a(replicas), top_b(replicas), sq_a(replicas), sq_b(replicas);
    std::vector<double> pooled;
    for (std::size_t i = 0; i < replicas; ++i) {
        top_a[i] = start[i].back();
        top_b[i] = end[i].back();
        sq_a[i] = sum_squares(start[i]);
        sq_b[i] = sum_squares(end[i]);
        const auto g = gaps(start[i]);
        pooled.insert(pooled.end(), g.begin(), g.end());
    }
    add_mean("largest_mean", top_a, top_b);
    add_variance("largest_variance", top_a, top_b);
    add_mean("sum_squares_mean", sq_a, sq_b);
    add_variance("sum_squares_variance", sq_a, sq_b);
    for (double q : {0.1, 0.5, 0.9}) {
        const double threshold = stats::quantile(pooled, q);
        std::vector<double> fa(replicas), fb(replicas);
        for (std::size_t i = 0; i < replicas; ++i) {
            auto frac = [threshold](const std::vector<double>& x) {
                const auto g = gaps(x);
                std::size_t c = 0;
                for (double v : g)
                    if (v < threshold) ++c;
                return static_cast<double>(c) / static_cast<double>(g.size());
            };
            fa[i] = frac(start[i]);
            fb[i] = frac(end[i]);
        }
        std::ostringstream name;
        name << "gap_fraction_below_q" << static_cast<int>(std::lround(q * 100));
        add_mean(name.str(), fa, fb);
    }
    for (const auto& r : rep.rows) rep.max_abs_z = std::max(rep.max_abs_z, std::abs(r.z));
    return rep;
}

OuCheck ou_variance_check(double beta, double dt, double T, std::size_t replicas,
                          std::uint64_t seed, std::size_t workers) {
    if (replicas < 2) throw ArgumentError("ou_variance_check needs at least two replicas");
    std::vector<double> finals(replicas);
    SdeOptions opt;
    opt.record_every = std::numeric_limits<std::size_t>::max();
    parallel_for(replicas, workers, [&](std::size_t i) {
        SdeState s0;
        s0.positions = {0.0};
        finals[i] = simulate_isde(s0, beta, 1, ScalingKind::raw, dt, T, stream_key(seed, i), opt)
                        .states.back()[0];
    });
    OuCheck out;
    // The mean is known to be zero, so the second moment estimates the variance.
    std::vector<double> sq(replicas);
    for (std::size_t i = 0; i < replicas; ++i) sq[i] = finals[i] * finals[i];
    out.variance = stats::mean(sq);
    out.std_error = stats::standard_error(sq);
    out.expected = 2.0 / beta;
    out.z = z_of(out.variance - out.expected, out.std_error);
    return out;
}

}  // namespace rpf
