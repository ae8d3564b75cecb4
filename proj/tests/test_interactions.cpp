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


#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rpf/error.hpp"
#include "rpf/interactions.hpp"

using namespace rpf;

namespace {

const AnnulusSequence kSeq = AnnulusSequence::linear(8);

PotentialPair quadratic_log(double beta) {
    return {[](const Point& x) { return 0.5 * std::norm(x); },
            [beta](const Point& a, const Point& b) { return log_potential(a, b, beta); }, beta};
}

Configuration random_plane(std::mt19937_64& gen, std::size_t size, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < size; ++i) pts.emplace_back(u(gen), i % 2 ? u(gen) : 0.0);
    return Configuration(std::move(pts));
}

// Direct value of -beta sum_{y in S_rs} log|x - y| + Re[x conj(m_r - m_s)].
double direct_compensated(const Point& x, const Configuration& y, std::size_t r, std::size_t s,
                          const CompensatorSequence& comp, double beta) {
    const double lo = kSeq.cutoff(r), hi = kSeq.cutoff(s);
    double v = 0.0;
    for (const auto& p : y)
        if (std::abs(p) >= lo && std::abs(p) < hi) v -= beta * std::log(std::abs(x - p));
    const Point dm = comp.at(r) - comp.at(s);
    return v + (x * std::conj(dm)).real();
}

std::vector<Point> disc_grid(double b, int g) {
    std::vector<Point> pts;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            const Point z{-b + (i + 0.5) * 2.0 * b / g, -b + (j + 0.5) * 2.0 * b / g};
            if (std::abs(z) < b) pts.push_back(z);
        }
    return pts;
}

}  // namespace

TEST_CASE("log potential") {
    CHECK(log_potential(Point{0.0, 0.0}, Point{0.6, 0.8}, 2.0) == 0.0);
    CHECK(log_potential(0.0, 0.5, 2.0) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(log_potential(1.0, 1.0, 2.0) == std::numeric_limits<double>::infinity());
    std::mt19937_64 gen(1);
    const auto c = random_plane(gen, 40, 3.0);
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        CHECK(log_potential(c[i], c[i + 1], 1.5) == log_potential(c[i + 1], c[i], 1.5));
}

TEST_CASE("hamiltonian on a window") {
    const auto pp = quadratic_log(2.0);
    const auto ball = Window::ball(kSeq, 2);
    CHECK(hamiltonian(pp, ball, Configuration{}) == 0.0);
    CHECK(hamiltonian(pp, ball, Configuration{0.5, 5.0}) == doctest::Approx(0.125));
    const double expected = 0.5 * 0.25 + 0.5 * 1.0 - 2.0 * std::log(1.5);
    CHECK(hamiltonian(pp, ball, Configuration{-0.5, 1.0, 3.0}) == doctest::Approx(expected));
    CHECK(std::isinf(hamiltonian(pp, ball, Configuration{0.5, 0.5})));
}

TEST_CASE("block interactions") {
    const auto pp = quadratic_log(2.0);
    CompensatorSequence same = CompensatorSequence::constant({1.5, -0.5});
    const Configuration x{0.2, -0.7, 1.3};
    const Configuration y{2.5, -3.2, 4.1, 7.5};
    CHECK(block_interaction(x, y, kSeq, 0, 2, 2, 5, pp, same, true) ==
          block_interaction(x, y, kSeq, 0, 2, 2, 5, pp, same, false));
    CHECK(block_interaction(Configuration{5.0}, y, kSeq, 0, 2, 2, 5, pp, same, true) == 0.0);

    CompensatorSequence comp;
    comp.by_index = {0.0, 0.0, {1.0, 0.5}, 0.0, 0.0, {-0.25, 2.0}};
    const Point xi{0.4, 0.3}, yj{0.0, 2.5};
    const double expected = log_potential(xi, yj, 2.0) +
                            (xi * std::conj(comp.at(2) - comp.at(5))).real();
    CHECK(block_interaction(Configuration(std::vector<Point>{xi}), Configuration(std::vector<Point>{yj}),
                            kSeq, 0, 2, 2, 5, pp, comp, true) == doctest::Approx(expected));
    CHECK_THROWS_AS(block_interaction(x, y, kSeq, 2, 2, 3, 4, pp, comp, true), ArgumentError);
    CHECK_THROWS_AS(block_interaction(x, y, kSeq, 0, 3, 2, 4, pp, comp, true), ArgumentError);
}

TEST_CASE("compensated hamiltonian") {
    const auto pp = quadratic_log(2.0);
    const auto ball = Window::ball(kSeq, 3);
    const Configuration c{-1.0, 0.5, 2.0, 4.0};
    CHECK(compensated_hamiltonian(pp, CompensatorSequence::constant(0.0), ball, c) ==
          hamiltonian(pp, ball, c));
    const Point x{0.5, -0.25};
    const Point m{2.0, 1.0};
    CHECK(compensated_hamiltonian(pp, CompensatorSequence::constant(m), ball,
                                  Configuration(std::vector<Point>{x})) ==
          doctest::Approx(0.5 * std::norm(x) - (x * std::conj(m)).real()));

    for (double beta : {1.0, 2.0, 4.0}) {
        for (std::size_t n : {50u, 5000u}) {
            const auto gas = log_gas(beta, n, ScalingKind::softedge);
            const auto comp = default_compensators(beta, n);
            for (double xv : {-2.0, 0.7}) {
                const double v = compensated_hamiltonian(gas, comp, ball, Configuration{xv});
                CHECK(v == doctest::Approx(0.25 * beta * xv * xv / std::cbrt(static_cast<double>(n))));
            }
        }
    }
}

TEST_CASE("hamiltonian decomposes over a ball and an annulus") {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_plane(gen, 12, 6.0);
        const auto pp = quadratic_log(1.0 + trial % 3);
        for (std::size_t r = 1; r <= 3; ++r) {
            const std::size_t s = r + 2;
            const double whole = hamiltonian(pp, Window::ball(kSeq, s), c);
            const double parts = hamiltonian(pp, Window::ball(kSeq, r), c) +
                                 hamiltonian(pp, Window::annulus(kSeq, r, s), c) +
                                 block_interaction(c, c, kSeq, 0, r, r, s, pp, {}, false);
            CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
        }
    }
}

TEST_CASE("compensated interactions telescope over consecutive annuli") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_plane(gen, 3, 1.0);
        const auto y = random_plane(gen, 15, 7.0);
        CompensatorSequence comp;
        comp.m_inf = {u(gen), u(gen)};
        for (int i = 0; i < 9; ++i) comp.by_index.emplace_back(u(gen), u(gen));
        const auto pp = quadratic_log(2.0);
        for (std::size_t t = 1; t <= 3; ++t) {
            const std::size_t mid = t + 2;
            for (std::size_t v : {t + 4, kInfinity}) {
                const double split = block_interaction(x, y, kSeq, 0, 1, t, mid, pp, comp, true) +
                                     block_interaction(x, y, kSeq, 0, 1, mid, v, pp, comp, true);
                const double whole = block_interaction(x, y, kSeq, 0, 1, t, v, pp, comp, true);
                CHECK(split == doctest::Approx(whole).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("taylor tail") {
    const std::vector<Point> one{1.0};
    CHECK(taylor_tail(0.0, one, 2.0, 7).value == 0.0);
    const auto deep = taylor_tail(0.5, one, 2.0, 200);
    CHECK(deep.value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    const auto t20 = taylor_tail(0.5, one, 2.0, 20);
    CHECK(std::abs(t20.value - 2.0 * std::log(2.0)) <= t20.remainder);
    CHECK(t20.remainder == doctest::Approx(2.0 * std::pow(0.5, 21) / (21 * 0.5)));
    CHECK_THROWS_AS(taylor_tail(1.0, one, 2.0, 5), DomainError);

    // Against direct differences of the log potential.
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Point x{0.5 * u(gen), 0.5 * u(gen)};
        std::vector<Point> ys;
        double direct = 0.0;
        for (int j = 0; j < 4; ++j) {
            Point y{3.0 * u(gen), 3.0 * u(gen)};
            if (std::abs(y) < std::abs(x) / 0.9) y *= (std::abs(x) / 0.9 + 0.1) / std::abs(y);
            ys.push_back(y);
            direct += log_potential(x, y, 3.0) - log_potential(0.0, y, 3.0);
        }
        const auto t = taylor_tail(x, ys, 3.0, 60);
        CHECK(std::abs(t.value - direct) <= t.remainder + 1e-12);
    }
}

TEST_CASE("lipschitz ratio") {
    const CompensatorSequence flat = CompensatorSequence::constant(2.0);
    CHECK(lipschitz_ratio(0.3, -0.2, Configuration{}, kSeq, 1, 3, flat, 2.0) == 0.0);
    CompensatorSequence comp;
    comp.by_index = {0.0, 1.25, 0.0, -0.5};
    CHECK(lipschitz_ratio(0.3, -0.2, Configuration{}, kSeq, 1, 3, comp, 2.0) ==
          doctest::Approx(1.75));
    const Configuration y{1.5};
    const double direct = std::abs(-2.0 * std::log(1.4) + 2.0 * std::log(1.6) + 0.2 * 1.75) / 0.2;
    CHECK(lipschitz_ratio(0.1, -0.1, y, kSeq, 1, 3, comp, 2.0) == doctest::Approx(direct));
    // Same difference through the series.
    const std::vector<Point> yv{1.5};
    const double series = taylor_tail(0.1, yv, 2.0, 80).value - taylor_tail(-0.1, yv, 2.0, 80).value;
    CHECK(std::abs(series + 0.2 * 1.75) / 0.2 == doctest::Approx(direct).epsilon(1e-12));
    CHECK_THROWS_AS(lipschitz_ratio(0.1, 0.1, y, kSeq, 1, 3, comp, 2.0), ArgumentError);
    CHECK_THROWS_AS(lipschitz_ratio(0.1, 1.0, y, kSeq, 1, 3, comp, 2.0), ArgumentError);
}

TEST_CASE("lipschitz bound constants") {
    CHECK(lipschitz_bound(Configuration{}, kSeq, 1, 3, CompensatorSequence::constant(1.0), 2.0, 3)
              .value == 0.0);
    // |x^2 - w^2| / (2|x - w|) = |x + w| / 2 has sup b on the ball of radius b.
    for (double b : {1.0, 2.0, 3.0}) CHECK(moment_constant(2.0, b, 3) == doctest::Approx(2.0 * b));
    CHECK(tail_constant(2.0, 2.0, 3) == doctest::Approx(3.0));
    CHECK(per_order_tail_constant(2.0, 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lipschitz_bound(Configuration{1.0}, kSeq, 1, 3, {}, 2.0, 3), DomainError);
    CHECK_THROWS_AS(lipschitz_bound(Configuration{2.0}, kSeq, 1, 3, {}, 2.0, 1), DomainError);
}

TEST_CASE("certified bound dominates a brute-force planar grid sup") {
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto grid = disc_grid(1.0, 50);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Point> ys;
        for (int j = 0; j < 1 + trial % 6; ++j)
            ys.push_back(std::polar(2.0 + 3.0 * u(gen), 2.0 * std::numbers::pi * u(gen)));
        const Configuration y(std::move(ys));
        CompensatorSequence comp;
        for (int i = 0; i < 9; ++i) comp.by_index.emplace_back(4.0 * u(gen) - 2.0, 4.0 * u(gen) - 2.0);
        const std::size_t s = trial % 2 ? 3 : kInfinity;
        const double sup = testing::brute_lipschitz(
            [&](Point x) { return direct_compensated(x, y, 1, s, comp, 2.0); }, grid);
        const auto bound = lipschitz_bound(y, kSeq, 1, s, comp, 2.0, 3);
        CHECK(sup <= bound.value * (1.0 + 1e-12));
        const auto gs = grid_sup_lipschitz_ratio(y, kSeq, 1, s, comp, 2.0, 50, true, 0);
        CHECK(gs.value == doctest::Approx(sup).epsilon(1e-9));
    }
}

TEST_CASE("tail constant without the ell0 factor fails near the ball") {
    // One y just outside the unit ball: x, w close to the boundary point
    // facing it make the difference quotient blow up faster than
    // |beta| b^ell0 / (b (|y|^ell0 - b^ell0)).
    const Configuration y{1.05};
    // Cancel the first-order term exactly to isolate the higher orders.
    CompensatorSequence cancel;
    cancel.by_index = {0.0, {-2.0 / 1.05, 0.0}, 0.0};
    const auto bound = lipschitz_bound(y, kSeq, 1, 2, cancel, 2.0, 2);
    CHECK(bound.first_order == doctest::Approx(0.0).scale(1.0));
    const double sup = lipschitz_ratio(0.999, 0.998, y, kSeq, 1, 2, cancel, 2.0);
    CHECK(sup <= bound.value);
    CHECK(sup > bound.per_order_value);
}

TEST_CASE("difference bound for several inner points") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Point> ys;
        for (int j = 0; j < 5; ++j) ys.push_back(std::polar(1.3 + 2.0 * (u(gen) + 1.0), 3.0 * u(gen)));
        const Configuration y(std::move(ys));
        const auto comp = CompensatorSequence::constant({u(gen), 0.0});
        double k = 0.0;
        for (std::size_t s : {2u, 3u, 4u}) k = std::max(k, lipschitz_bound(y, kSeq, 1, s, comp, 2.0, 3).value);
        k = std::max(k, lipschitz_bound(y, kSeq, 1, kInfinity, comp, 2.0, 3).value);
        const std::size_t m = 1 + trial % 3;
        for (std::size_t s : {std::size_t{2}, kInfinity}) {
            double diff = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const Point x{0.99 * u(gen), 0.0}, w{0.99 * u(gen), 0.0};
                diff += compensated_interaction(x, y, kSeq, 1, s, comp, 2.0) -
                        compensated_interaction(w, y, kSeq, 1, s, comp, 2.0);
            }
            CHECK(std::abs(diff) <= static_cast<double>(m) * k * 2.0);
        }
    }
}

TEST_CASE("inverse power sums") {
    const Configuration y(std::vector<Point>{{2.0, 0.0}, {0.0, 2.0}, {5.0, 0.0}});
    const auto w = Window::annulus(kSeq, 1, 3);
    CHECK(std::abs(inverse_power_sum(y, w, 1) - Point{0.5, -0.5}) < 1e-15);
    CHECK(std::abs(inverse_power_sum(y, w, 2) - Point{0.0, 0.0}) < 1e-15);
    CHECK_THROWS_AS(inverse_power_sum(y, w, 0), DomainError);
    CHECK_THROWS_AS(inverse_power_sum(Configuration{0.0}, Window::ball(kSeq, 1), 1), DomainError);
}

TEST_CASE("randomized checks report no violations") {
    const auto taylor = taylor_check(300, 60, 2.0, 0.9, 1);
    CHECK(taylor.violations == 0);
    CHECK(taylor.max_error_over_bound <= 1.0);
    CHECK(taylor_check(100, 60, 2.0, 0.9, 1, true).violations == 0);
    const auto lip = lipschitz_check(100, 2.0, 3, 1, 30, 2, 1);
    CHECK(lip.violations == 0);
    CHECK(lip.per_order_violations > 0);
    CHECK(lipschitz_check(100, 2.0, 3, 1, 30, 2, 3).max_sup_over_bound == lip.max_sup_over_bound);
    CHECK_THROWS_AS(taylor_check(10, 10, 2.0, 1.0, 1), ArgumentError);
}
