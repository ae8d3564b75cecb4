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
#include <set>

#include "doctest.h"
#include "rpf/eigen.hpp"
#include "rpf/error.hpp"
#include "rpf/parallel.hpp"
#include "rpf/rng.hpp"
#include "rpf/stats.hpp"

using namespace rpf;

TEST_CASE("philox4x32-10 known answers") {
    // Reference vectors distributed with the Random123 library.
    CHECK(philox4x32(0, 0, 0) == PhiloxBlock{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32(~0ull, ~0ull, ~0ull) ==
          PhiloxBlock{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32(0x299f31d0a4093822ull, 0x0370734413198a2eull, 0x85a308d3243f6a88ull) ==
          PhiloxBlock{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are deterministic and distinct") {
    CounterRng a(stream_key(7, 0)), b(stream_key(7, 0)), c(stream_key(7, 1)), d(stream_key(8, 0));
    std::set<std::uint64_t> firsts;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        firsts.insert(va);
    }
    CHECK(firsts.size() == 100);
    CHECK(c.next_u64() != CounterRng(stream_key(7, 0)).next_u64());
    CHECK(d.next_u64() != CounterRng(stream_key(7, 0)).next_u64());
    CHECK(CounterRng(5, 1).next_u64() != CounterRng(5, 0).next_u64());
    CHECK(normal_at(3, 4, 5) == normal_at(3, 4, 5));
}

TEST_CASE("variate moments") {
    CounterRng rng(stream_key(1, 2));
    const int n = 200000;
    std::vector<double> u(n), z(n), g(n), chi(n);
    for (int i = 0; i < n; ++i) {
        u[i] = rng.uniform();
        z[i] = rng.normal();
        g[i] = rng.gamma(0.7);
        chi[i] = rng.chi(3.0);
    }
    auto within = [n](double m, double expected, double sd) {
        return std::abs(m - expected) < 4.0 * sd / std::sqrt(static_cast<double>(n));
    };
    CHECK(within(stats::mean(u), 0.5, std::sqrt(1.0 / 12.0)));
    CHECK(within(stats::mean(z), 0.0, 1.0));
    CHECK(within(stats::variance(z), 1.0, std::sqrt(2.0)));
    CHECK(within(stats::mean(g), 0.7, std::sqrt(0.7)));
    // chi with 3 degrees of freedom: E X^2 = 3.
    std::vector<double> sq(n);
    for (int i = 0; i < n; ++i) sq[i] = chi[i] * chi[i];
    CHECK(within(stats::mean(sq), 3.0, std::sqrt(6.0)));
    for (double v : u) REQUIRE((v > 0.0 && v < 1.0));
}

TEST_CASE("tridiagonal eigenvalues of the discrete Laplacian") {
    const std::size_t n = 50;
    std::vector<double> d(n, 2.0), e(n - 1, -1.0);
    const auto ev = eigen::tridiagonal_eigenvalues(d, e);
    REQUIRE(ev.size() == n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double expected = 2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1.0));
        CHECK(ev[k - 1] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("dense symmetric and hermitian eigenvalues") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    const std::size_t n = 12;
    // Similarity transform of a known diagonal by a random rotation product.
    eigen::SymmetricMatrix m(n);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = static_cast<double>(i) - 3.5;
    for (std::size_t i = 0; i < n; ++i) m(i, i) = diag[i];
    for (int rot = 0; rot < 40; ++rot) {
        const std::size_t p = gen() % n, q = (p + 1 + gen() % (n - 1)) % n;
        const double th = nd(gen), c = std::cos(th), s = std::sin(th);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = m(p, k), b = m(q, k);
            m(p, k) = c * a - s * b;
            m(q, k) = s * a + c * b;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const double a = m(k, p), b = m(k, q);
            m(k, p) = c * a - s * b;
            m(k, q) = s * a + c * b;
        }
    }
    const auto ev = eigen::symmetric_eigenvalues(m);
    for (std::size_t i = 0; i < n; ++i) CHECK(ev[i] == doctest::Approx(diag[i]).epsilon(1e-10));

    // Pauli-type 2x2 Hermitian [[1, -i], [i, 1]] has eigenvalues 0 and 2.
    eigen::HermitianMatrix h(2);
    h(0, 0) = 1.0;
    h(1, 1) = 1.0;
    h(0, 1) = {0.0, -1.0};
    h(1, 0) = {0.0, 1.0};
    const auto hv = eigen::hermitian_eigenvalues(h);
    REQUIRE(hv.size() == 2);
    CHECK(hv[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hv[1] == doctest::Approx(2.0));
}

TEST_CASE("multiplet collapse") {
    const std::vector<double> pairs{-1.0, -1.0 + 1e-12, 3.0, 3.0};
    const auto merged = eigen::collapse_multiplets(pairs, 2);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0] == doctest::Approx(-1.0).epsilon(1e-11));
    CHECK(merged[1] == 3.0);
    CHECK_THROWS_AS(eigen::collapse_multiplets(std::vector<double>{0.0, 1.0}, 2), NumericalError);
}

TEST_CASE("parallel_for covers every index and rethrows the lowest failure") {
    std::vector<int> hit(1000, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    for (int h : hit) CHECK(h == 1);
    try {
        parallel_for(100, 4, [](std::size_t i) {
            if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
        });
        FAIL("no exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
    }
}

TEST_CASE("descriptive statistics") {
    const std::vector<double> xs{4.0, 1.0, 3.0, 2.0};
    CHECK(stats::mean(xs) == 2.5);
    CHECK(stats::variance(xs) == doctest::Approx(5.0 / 3.0));
    CHECK(stats::standard_error(xs) == doctest::Approx(std::sqrt(5.0 / 12.0)));
    CHECK(stats::quantile(xs, 0.0) == 1.0);
    CHECK(stats::quantile(xs, 0.5) == 2.5);
    CHECK(stats::quantile(xs, 1.0) == 4.0);
    CHECK(stats::ks_statistic(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}) == 0.0);
    CHECK(stats::ks_statistic(std::vector<double>{0, 1}, std::vector<double>{5, 6}) == 1.0);
    CHECK(stats::ks_critical_value(100, 100) == doctest::Approx(1.628 * std::sqrt(0.02)));
    // Jackknife of the variance for normal data approaches sqrt(2/(n-1)) sigma^2.
    std::mt19937_64 gen(9);
    std::normal_distribution<double> nd;
    std::vector<double> big(20000);
    for (auto& v : big) v = nd(gen);
    CHECK(stats::variance_standard_error(big) ==
          doctest::Approx(std::sqrt(2.0 / 19999.0)).epsilon(0.05));
}
