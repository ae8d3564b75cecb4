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
#include <random>

#include "doctest.h"
#include "rpf/dynamics.hpp"
#include "rpf/error.hpp"

using namespace rpf;

TEST_CASE("drift is half the gradient of the log Boltzmann weight") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto kind = static_cast<ScalingKind>(trial % 3);
        const double beta = trial % 2 ? 1.0 : 4.0;
        const std::size_t n = 2 + trial % 7;
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        std::vector<double> x(n);
        for (auto& v : x) v = u(gen);
        std::sort(x.begin(), x.end());
        if (std::adjacent_find(x.begin(), x.end(), [](double a, double b) { return b - a < 1e-2; }) !=
            x.end())
            continue;
        const auto d = drift(x, beta, n, kind);
        for (std::size_t i = 0; i < n; ++i) {
            const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
            auto xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const double fd = 0.5 *
                              (log_boltzmann(beta, n, kind, Configuration::from_reals(xp)) -
                               log_boltzmann(beta, n, kind, Configuration::from_reals(xm))) /
                              (2.0 * h);
            CHECK(std::abs(d[i] - fd) <= 1e-6 * std::max(1.0, std::abs(d[i])));
        }
    }
    const std::vector<double> same{0.5, 0.5};
    CHECK_THROWS_AS(drift(same, 2.0, 2, ScalingKind::raw), DomainError);
}

TEST_CASE("flipped confinement reverses only the confinement force") {
    const std::vector<double> x{-1.3, 0.2, 2.0};
    const auto d = drift(x, 2.0, 3, ScalingKind::raw);
    const auto f = drift(x, 2.0, 3, ScalingKind::raw, true);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(d[i] - f[i] == doctest::Approx(-confinement_derivative(2.0, 3, ScalingKind::raw, x[i])));
}

TEST_CASE("trajectories are deterministic in the seed") {
    SdeState s0;
    s0.positions = {-1.0, 0.0, 1.5};
    SdeOptions opt;
    opt.record_every = 10;
    const auto a = simulate_isde(s0, 2.0, 3, ScalingKind::raw, 1e-3, 0.1, 5, opt);
    const auto b = simulate_isde(s0, 2.0, 3, ScalingKind::raw, 1e-3, 0.1, 5, opt);
    const auto c = simulate_isde(s0, 2.0, 3, ScalingKind::raw, 1e-3, 0.1, 6, opt);
    CHECK(a.states == b.states);
    CHECK(a.times == b.times);
    CHECK(a.states.back() != c.states.back());
    CHECK(a.times.front() == 0.0);
    CHECK(a.times.back() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(a.states.size() == 11);
    for (const auto& st : a.states) CHECK(std::is_sorted(st.begin(), st.end()));
}

TEST_CASE("zero noise follows the deterministic flow") {
    SdeOptions opt;
    opt.zero_noise = true;
    SdeState eq;
    eq.positions = {-1.0, 1.0};
    const auto fixed = simulate_isde(eq, 2.0, 2, ScalingKind::raw, 1e-3, 1.0, 1, opt);
    CHECK(fixed.states.back()[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fixed.states.back()[1] == doctest::Approx(1.0).epsilon(1e-12));

    SdeState one;
    one.positions = {2.0};
    const auto decay = simulate_isde(one, 2.0, 1, ScalingKind::raw, 1e-3, 1.0, 1, opt);
    CHECK(decay.states.back()[0] == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-3));
}

TEST_CASE("stationarity, negative control and OU variance") {
    const auto rep = invariance_report(2.0, 10, ScalingKind::raw, 1e-3, 0.5, 300, 3);
    CHECK(rep.max_abs_z < 4.5);
    CHECK(rep.rows.size() >= 5);
    const auto flipped = invariance_report(2.0, 10, ScalingKind::raw, 1e-3, 0.5, 300, 3, 1, true);
    CHECK(flipped.max_abs_z > 10.0);

    const auto ou = ou_variance_check(2.0, 1e-3, 10.0, 400, 4);
    CHECK(ou.expected == 1.0);
    CHECK(std::abs(ou.z) < 4.0);
}

TEST_CASE("dynamics preconditions") {
    SdeState s0;
    s0.positions = {0.0, 1.0};
    CHECK_THROWS_AS(simulate_isde(s0, 2.0, 2, ScalingKind::raw, 0.0, 1.0, 1), ArgumentError);
    CHECK_THROWS_AS(simulate_isde(s0, 2.0, 2, ScalingKind::raw, 1e-2, 1e-3, 1), ArgumentError);
    CHECK_THROWS_AS(simulate_isde(s0, -1.0, 2, ScalingKind::raw, 1e-3, 1.0, 1), ArgumentError);
    SdeOptions bad;
    bad.record_every = 0;
    CHECK_THROWS_AS(simulate_isde(s0, 2.0, 2, ScalingKind::raw, 1e-3, 1.0, 1, bad), ArgumentError);
    s0.positions = {1.0, 1.0};
    CHECK_THROWS_AS(simulate_isde(s0, 2.0, 2, ScalingKind::raw, 1e-3, 1.0, 1), DomainError);
    CHECK_THROWS_AS(invariance_report(2.0, 10, ScalingKind::raw, 1e-3, 0.1, 2, 1), ArgumentError);
    CHECK(default_time_step(std::vector<double>{0.0}) == 1e-3);
    CHECK(default_time_step(std::vector<double>{0.0, 2.0}) == doctest::Approx(4e-3));
}
