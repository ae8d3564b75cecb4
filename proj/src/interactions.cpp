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


#include "rpf/interactions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rpf/error.hpp"
#include "rpf/parallel.hpp"
#include "rpf/rng.hpp"

namespace rpf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Re[x conj(m)], the planar dot product x . m.
inline double dot(const Point& x, const Point& m) noexcept {
    return x.real() * m.real() + x.imag() * m.imag();
}

void check_blocks(std::size_t r, std::size_t s, std::size_t t, std::size_t u) {
    if (!(r < s && s <= t && t < u))
        throw ArgumentError("block_interaction requires r < s <= t < u");
}

}  // namespace

CompensatorSequence default_compensators(double beta, std::size_t n) {
    return CompensatorSequence::constant({beta * std::cbrt(static_cast<double>(n)), 0.0});
}

double log_potential(const Point& x, const Point& y, double beta) {
    const double d = std::abs(x - y);
    if (d == 0.0) {
        if (beta == 0.0) return 0.0;
        return beta > 0.0 ? kInf : -kInf;
    }
    return -beta * std::log(d);
}

PotentialPair log_gas(double beta, std::size_t n, ScalingKind kind) {
    return {[=](const Point& x) { return confinement(beta, n, kind, x.real()); },
            [=](const Point& x, const Point& y) { return log_potential(x, y, beta); }, beta};
}

PotentialPair free_particles(double beta, std::size_t n, ScalingKind kind) {
    return {[=](const Point& x) { return confinement(beta, n, kind, x.real()); },
            [](const Point&, const Point&) { return 0.0; }, beta};
}

double hamiltonian(const PotentialPair& pp, const Window& w, const Configuration& config) {
    const auto inside = restrict(config, w);
    const auto pts = inside.points();
    double h = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        h += pp.phi(pts[i]);
        for (std::size_t j = i + 1; j < pts.size(); ++j) h += pp.psi(pts[i], pts[j]);
    }
    return h;
}

double block_interaction(const Configuration& x, const Configuration& y,
                         const AnnulusSequence& seq, std::size_t r, std::size_t s,
                         std::size_t t, std::size_t u, const PotentialPair& pp,
                         const CompensatorSequence& comp, bool compensated) {
    check_blocks(r, s, t, u);
    const auto xs = restrict(x, Window::shell(seq, r, s));
    const auto ys = restrict(y, Window::shell(seq, t, u));
    double total = 0.0;
    Point x_sum{};
    for (const auto& xi : xs) {
        x_sum += xi;
        for (const auto& yj : ys) total += pp.psi(xi, yj);
    }
    if (compensated) total += dot(x_sum, comp.at(t) - comp.at(u));
    return total;
}

double compensated_hamiltonian(const PotentialPair& pp, const CompensatorSequence& comp,
                               const Window& w, const Configuration& config) {
    const auto inside = restrict(config, w);
    const auto pts = inside.points();
    double h = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        h += pp.phi(pts[i]) - dot(pts[i], comp.m_inf);
        for (std::size_t j = i + 1; j < pts.size(); ++j) h += pp.psi(pts[i], pts[j]);
    }
    return h;
}

TaylorTail taylor_tail(const Point& x, std::span<const Point> y, double beta, int order) {
    if (order < 0) throw ArgumentError("taylor_tail: negative truncation order");
    const double ax = std::abs(x);
    TaylorTail out;
    for (const auto& yj : y) {
        const double q = ax / std::abs(yj);
        if (!(q < 1.0)) throw DomainError("taylor_tail: |x| must be below every |y_j|");
        const Point ratio = x / yj;
        Point power = 1.0;
        double partial = 0.0;
        for (int l = 1; l <= order; ++l) {
            power *= ratio;
            partial += power.real() / l;
        }
        out.value += beta * partial;
        out.remainder += std::abs(beta) * std::pow(q, order + 1) / ((order + 1) * (1.0 - q));
    }
    return out;
}

double compensated_interaction(const Point& x, const Configuration& y, const AnnulusSequence& seq,
                               std::size_t r, std::size_t s, const CompensatorSequence& comp,
                               double beta) {
    const PotentialPair pp{[](const Point&) { return 0.0; },
                           [beta](const Point& a, const Point& b) { return log_potential(a, b, beta); },
                           beta};
    return block_interaction(Configuration(std::vector<Point>{x}), y, seq, 0, r, r, s, pp, comp,
                             true);
}

double lipschitz_ratio(const Point& x, const Point& w, const Configuration& y,
                       const AnnulusSequence& seq, std::size_t r, std::size_t s,
                       const CompensatorSequence& comp, double beta) {
    if (x == w) throw ArgumentError("lipschitz_ratio: x and w coincide");
    const double b = seq.cutoff(r);
    if (!(std::abs(x) < b && std::abs(w) < b))
        throw ArgumentError("lipschitz_ratio: x and w must lie in the ball S_r");
    const double fx = compensated_interaction(x, y, seq, r, s, comp, beta);
    const double fw = compensated_interaction(w, y, seq, r, s, comp, beta);
    return std::abs(fx - fw) / std::abs(x - w);
}

double moment_constant(double beta, double radius, int ell0) {
    return std::abs(beta) * std::max(1.0, std::pow(radius, ell0 - 2));
}

double tail_constant(double beta, double radius, int ell0) {
    return static_cast<double>(ell0) * std::abs(beta) / radius;
}

double per_order_tail_constant(double beta, double radius) { return std::abs(beta) / radius; }

LipschitzBound lipschitz_bound(const Configuration& y, const AnnulusSequence& seq, std::size_t r,
                               std::size_t s, const CompensatorSequence& comp, double beta,
                               int ell0) {
    if (ell0 < 2) throw DomainError("lipschitz_bound: ell0 must be at least 2");
    const double b = seq.cutoff(r);
    for (const auto& p : y)
        if (std::abs(p) <= b) throw DomainError("lipschitz_bound: y-point inside the closed ball");
    const auto win = Window::shell(seq, r, s);
    LipschitzBound out;
    out.moment_const = moment_constant(beta, b, ell0);
    out.tail_const = tail_constant(beta, b, ell0);
    const Point f = beta * inverse_power_sum(y, win, 1) + std::conj(comp.at(r)) -
                    std::conj(comp.at(s));
    out.first_order = std::abs(f);
    double moments = 0.0;
    for (int l = 2; l < ell0; ++l) moments += std::abs(inverse_power_sum(y, win, l));
    out.moments = out.moment_const * moments;
    const double bl = std::pow(b, ell0);
    double tail = 0.0;
    for (const auto& p : y)
        if (win.contains(p)) tail += bl / (std::pow(std::abs(p), ell0) - bl);
    out.tail = out.tail_const * tail;
    out.value = out.first_order + out.moments + out.tail;
    out.per_order_value = out.first_order + out.moments + per_order_tail_constant(beta, b) * tail;
    return out;
}

namespace {

std::vector<Point> ball_grid(double b, std::size_t g, bool planar) {
    std::vector<Point> pts;
    const double step = 2.0 * b / static_cast<double>(g);
    for (std::size_t i = 0; i < g; ++i) {
        const double re = -b + (static_cast<double>(i) + 0.5) * step;
        if (!planar) {
            pts.emplace_back(re, 0.0);
            continue;
        }
        for (std::size_t j = 0; j < g; ++j) {
            const Point z{re, -b + (static_cast<double>(j) + 0.5) * step};
            if (std::abs(z) < b) pts.push_back(z);
        }
    }
    return pts;
}

double grid_max(const Configuration& y, const AnnulusSequence& seq, std::size_t r, std::size_t s,
                const CompensatorSequence& comp, double beta, std::size_t g, bool planar) {
    const auto pts = ball_grid(seq.cutoff(r), g, planar);
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        vals[i] = compensated_interaction(pts[i], y, seq, r, s, comp, beta);
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, std::abs(vals[i] - vals[j]) / std::abs(pts[i] - pts[j]));
    return best;
}

}  // namespace

GridSup grid_sup_lipschitz_ratio(const Configuration& y, const AnnulusSequence& seq, std::size_t r,
                                 std::size_t s, const CompensatorSequence& comp, double beta,
                                 std::size_t points_per_axis, bool planar, int max_refinements) {
    if (points_per_axis < 2) throw ArgumentError("grid needs at least two points per axis");
    GridSup out;
    out.points_per_axis = points_per_axis;
    out.value = grid_max(y, seq, r, s, comp, beta, points_per_axis, planar);
    while (out.refinements < max_refinements) {
        const std::size_t g = 2 * out.points_per_axis;
        const double v = grid_max(y, seq, r, s, comp, beta, g, planar);
        out.last_relative_change = out.value > 0.0 ? std::abs(v - out.value) / out.value : 0.0;
        out.value = std::max(out.value, v);
        out.points_per_axis = g;
        ++out.refinements;
        if (out.last_relative_change < 0.01) break;
    }
    return out;
}

Point inverse_power_sum(const Configuration& y, const Window& w, int ell) {
    if (ell < 1) throw DomainError("inverse_power_sum: exponent must be at least 1");
    Point sum{};
    for (const auto& p : y) {
        if (!w.contains(p)) continue;
        if (p == Point{}) throw DomainError("inverse_power_sum: point at the origin");
        Point power = p;
        for (int l = 1; l < ell; ++l) power *= p;
        sum += 1.0 / power;
    }
    return sum;
}

namespace {

Point random_direction(CounterRng& rng, bool planar) {
    if (planar) return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    return rng.uniform() < 0.5 ? Point{-1.0, 0.0} : Point{1.0, 0.0};
}

}  // namespace

TaylorCheckSummary taylor_check(std::size_t trials, int order, double beta, double max_ratio,
                                std::uint64_t seed, bool planar) {
    if (!(max_ratio > 0.0 && max_ratio < 1.0)) throw ArgumentError("max_ratio must lie in (0, 1)");
    TaylorCheckSummary out;
    out.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        CounterRng rng(stream_key(seed, t));
        const Point x = rng.uniform() * random_direction(rng, planar);
        const auto count = 1 + static_cast<std::size_t>(rng.uniform() * 6.0);
        std::vector<Point> ys;
        double direct = 0.0, scale = 1.0;
        for (std::size_t j = 0; j < count; ++j) {
            // |y| between |x| / max_ratio and that plus 4.
            const double lo = std::max(std::abs(x) / max_ratio, 1e-3);
            const Point y = (lo + 4.0 * rng.uniform()) * random_direction(rng, planar);
            ys.push_back(y);
            direct += log_potential(x, y, beta) - log_potential(Point{}, y, beta);
            scale += std::abs(beta) * std::abs(std::log(std::abs(y)));
        }
        const auto tail = taylor_tail(x, ys, beta, order);
        const double err = std::abs(tail.value - direct);
        const double allowed = tail.remainder + 1e-13 * scale;
        out.max_error = std::max(out.max_error, err);
        out.max_error_over_bound = std::max(out.max_error_over_bound, err / allowed);
        if (err > allowed) ++out.violations;
    }
    return out;
}

namespace {
// Divided differences of log sums near a tight bound carry rounding of this
// relative size.
constexpr double kRatioSlack = 1e-9;
}  // namespace

LipschitzCheckSummary lipschitz_check(std::size_t trials, double beta, int ell0, std::size_t r,
                                      std::size_t grid_points, std::uint64_t seed,
                                      std::size_t workers, bool planar) {
    if (r < 1) throw ArgumentError("lipschitz_check: r must be at least 1");
    const auto seq = AnnulusSequence::linear(r + 4);
    const double b = seq.cutoff(r);
    std::vector<double> ratio(trials, 0.0), per_order_ratio(trials, 0.0);
    auto safe_ratio = [](double sup, double bound) {
        if (bound > 0.0) return sup / bound;
        return sup > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    };
    parallel_for(trials, workers, [&](std::size_t t) {
        CounterRng rng(stream_key(seed, t));
        const auto count = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
        std::vector<Point> ys;
        for (std::size_t j = 0; j < count; ++j)
            ys.push_back(b * (1.0 + 3.0 * rng.uniform()) * random_direction(rng, planar));
        const auto pick = static_cast<std::size_t>(rng.uniform() * 5.0);
        const std::size_t s = pick < 4 ? r + 1 + pick : kInfinity;
        CompensatorSequence comp;
        comp.by_index.assign(r + 5, Point{});
        for (auto& m : comp.by_index)
            m = Point{10.0 * rng.uniform() - 5.0, planar ? 10.0 * rng.uniform() - 5.0 : 0.0};
        comp.m_inf = Point{10.0 * rng.uniform() - 5.0, planar ? 10.0 * rng.uniform() - 5.0 : 0.0};
        const Configuration y(std::move(ys));
        const auto bound = lipschitz_bound(y, seq, r, s, comp, beta, ell0);
        const auto sup = grid_sup_lipschitz_ratio(y, seq, r, s, comp, beta, grid_points, planar,
                                                  planar ? 0 : 3);
        ratio[t] = safe_ratio(sup.value, bound.value);
        per_order_ratio[t] = safe_ratio(sup.value, bound.per_order_value);
    });
    LipschitzCheckSummary out;
    out.trials = trials;
    for (double v : ratio) {
        out.max_sup_over_bound = std::max(out.max_sup_over_bound, v);
        if (v > 1.0 + kRatioSlack) ++out.violations;
    }
    for (double v : per_order_ratio) {
        out.max_sup_over_per_order_bound = std::max(out.max_sup_over_per_order_bound, v);
        if (v > 1.0 + kRatioSlack) ++out.per_order_violations;
    }
    return out;
}

}  // namespace rpf
