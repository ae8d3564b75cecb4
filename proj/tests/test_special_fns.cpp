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
#include "rpf/special_fns.hpp"

using namespace rpf;

namespace {

struct AiryRow {
    double x, ai, aip;
};

// Contour-quadrature oracle values (oracles.hpp), frozen.
constexpr AiryRow kAiryTable[] = {
    {-15, 0.27821749087082518, 0.27237420430866595},
    {-10, 0.04024123848644314, 0.99626504413278995},
    {-7.5, 0.32177571638064787, 0.31880950669855459},
    {-6, -0.3291451736298231, 0.3459354872813429},
    {-5, 0.35076100902411432, 0.32719281855444314},
    {-2, 0.22740742820168558, 0.61825902074169104},
    {-1, 0.53556088329235212, -0.010160567116645209},
    {0, 0.35502805388781724, -0.2588194037928068},
    {0.5, 0.23169360648083349, -0.22491053266468389},
    {1, 0.13529241631288142, -0.15914744129679321},
    {2, 0.034924130423274379, -0.053090384433653631},
    {4, 0.00095156385120480189, -0.0019586409502041789},
    {6, 9.9476943602529026e-06, -2.4765200397034953e-05},
    {7, 7.4921288639971884e-07, -2.0081508947387923e-06},
    {8, 4.6922076160988387e-08, -1.3414392979067821e-07},
};

const AiryRow& row_at(double x) {
    for (const auto& r : kAiryTable)
        if (r.x == x) return r;
    throw std::logic_error("no frozen row");
}

}  // namespace

TEST_CASE("quadrature oracle reproduces its frozen table") {
    for (const auto& r : kAiryTable) {
        const auto [ai, aip] = testing::airy_by_quadrature(r.x);
        CHECK(static_cast<double>(ai) == doctest::Approx(r.ai).epsilon(1e-14).scale(1e-3));
        CHECK(static_cast<double>(aip) == doctest::Approx(r.aip).epsilon(1e-14).scale(1e-3));
    }
}

TEST_CASE("airy matches the frozen oracle values") {
    for (const auto& r : kAiryTable) {
        CAPTURE(r.x);
        const auto v = airy(r.x);
        CHECK(std::abs(v.ai - r.ai) <= 1e-10);
        CHECK(std::abs(v.aip - r.aip) <= 1e-10);
    }
    CHECK(airy(0.0).ai == doctest::Approx(0.3550280539).epsilon(1e-10));
    CHECK(airy(0.0).aip == doctest::Approx(-0.2588194038).epsilon(1e-10));
}

TEST_CASE("airy satisfies Ai'' = x Ai") {
    for (double x : {-5.0, 0.0, 2.0, -12.0, 9.0}) {
        const double h = 1e-3;
        const double second = (airy(x + h).ai - 2.0 * airy(x).ai + airy(x - h).ai) / (h * h);
        CAPTURE(x);
        CHECK(std::abs(second - x * airy(x).ai) <= 1e-6 * std::max(1.0, std::abs(x * airy(x).ai)));
        const double dprime = (airy(x + h).aip - airy(x - h).aip) / (2.0 * h);
        CHECK(std::abs(dprime - x * airy(x).ai) <= 1e-6 * std::max(1.0, std::abs(x)));
    }
}

TEST_CASE("the evaluation regimes agree at the switch points") {
    const auto s = detail::airy_series(kAirySeriesLow);
    const auto a = detail::airy_asymptotic(kAirySeriesLow);
    CHECK(std::abs(s.ai - a.ai) <= 1e-9);
    CHECK(std::abs(s.aip - a.aip) <= 1e-9);

    const auto s2 = detail::airy_series(kAirySeriesHigh);
    const auto i2 = detail::airy_integrated(kAirySeriesHigh);
    CHECK(std::abs(s2.ai - i2.ai) <= 1e-13 * std::abs(s2.ai));
    CHECK(std::abs(s2.aip - i2.aip) <= 1e-13 * std::abs(s2.aip));

    // Relative agreement where Ai is small: the integrated form against the
    // asymptotic expansion, whose truncation error is about exp(-2 zeta).
    for (double x : {8.0, kAiryAsymptoticHigh - 1e-9}) {
        const auto i = detail::airy_integrated(x);
        const auto as = detail::airy_asymptotic(x);
        CAPTURE(x);
        CHECK(std::abs(i.ai / as.ai - 1.0) <= 1e-11);
        CHECK(std::abs(i.aip / as.aip - 1.0) <= 1e-11);
    }
}

TEST_CASE("airy keeps relative accuracy on the decaying side") {
    // Ai'' = x Ai through five-point differences of Ai', relative to the
    // local size of (Ai, Ai').
    for (double x = 0.5; x <= 14.5; x += 0.25) {
        const double h = 1e-3;
        const auto v = airy(x);
        const double d = (airy(x - 2 * h).aip - 8.0 * airy(x - h).aip + 8.0 * airy(x + h).aip -
                          airy(x + 2 * h).aip) /
                         (12.0 * h);
        CAPTURE(x);
        CHECK(std::abs(d - x * v.ai) <= 1e-8 * x * std::hypot(v.ai, v.aip));
    }
}

TEST_CASE("airy range is enforced") {
    CHECK_THROWS_AS(airy(-40.5), RangeError);
    CHECK_THROWS_AS(airy(15.5), RangeError);
    CHECK_THROWS_AS(airy(std::nan("")), RangeError);
    CHECK_NOTHROW(airy(-40.0));
    CHECK_NOTHROW(airy(15.0));
    CHECK(airy(15.0).ai > 0.0);
}

TEST_CASE("airy kernel") {
    const auto& a0 = row_at(0.0);
    CHECK(airy_kernel(0.0, 0.0) == doctest::Approx(a0.aip * a0.aip).epsilon(1e-9));
    CHECK(airy_kernel(0.0, 0.0) == doctest::Approx(0.0669875).epsilon(1e-6));
    const auto& a1 = row_at(1.0);
    const auto& a2 = row_at(2.0);
    const double expected = (a1.ai * a2.aip - a1.aip * a2.ai) / (1.0 - 2.0);
    CHECK(airy_kernel(1.0, 2.0) == doctest::Approx(expected).epsilon(1e-9));

    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(-10.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(gen), y = u(gen);
        CHECK(airy_kernel(x, y) == airy_kernel(y, x));
    }
    // Continuity across the diagonal threshold.
    for (double x : {-3.0, 0.5}) {
        const double near = airy_kernel(x, x + 2e-6);
        const double at = airy_kernel(x, x + 5e-7);
        CHECK(near == doctest::Approx(at).epsilon(1e-6));
    }
    CHECK_THROWS_AS(airy_kernel(-50.0, 0.0), RangeError);
}

TEST_CASE("sine kernel") {
    CHECK(sine_kernel(0.3, 0.3) == 1.0);
    CHECK(std::abs(sine_kernel(0.0, 1.0)) < 1e-15);
    CHECK(sine_kernel(0.0, 0.5) == doctest::Approx(2.0 / std::numbers::pi));
    CHECK(parse_kernel("sine") == KernelKind::sine);
    CHECK_THROWS_AS(parse_kernel("bessel"), ArgumentError);
}

TEST_CASE("determinantal correlations") {
    const std::vector<double> one{-1.3};
    CHECK(det_correlation(KernelKind::airy, one) == doctest::Approx(airy_kernel(-1.3, -1.3)));
    const std::vector<double> twice{0.7, 0.7};
    CHECK(std::abs(det_correlation(KernelKind::airy, twice)) < 1e-14);
    const std::vector<double> pair{-2.0, 0.5};
    const double k = airy_kernel(-2.0, 0.5);
    CHECK(det_correlation(KernelKind::airy, pair) ==
          doctest::Approx(airy_kernel(-2.0, -2.0) * airy_kernel(0.5, 0.5) - k * k));
    CHECK_THROWS_AS(det_correlation(KernelKind::sine, std::vector<double>{}), ArgumentError);

    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-8.0, 4.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> pts(1 + trial % 4);
        for (auto& p : pts) p = u(gen);
        CHECK(det_correlation(KernelKind::airy, pts) >= -1e-10);
        if (pts.size() >= 2) {
            const double r2 = det_correlation(KernelKind::airy, std::vector<double>{pts[0], pts[1]});
            CHECK(r2 <= airy_kernel(pts[0], pts[0]) * airy_kernel(pts[1], pts[1]) + 1e-15);
        }
    }
}

TEST_CASE("determinant by elimination") {
    std::vector<double> m{2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0};
    CHECK(determinant(m, 3) == doctest::Approx(18.0));
    std::vector<double> swap{0.0, 1.0, 1.0, 0.0};
    CHECK(determinant(swap, 2) == doctest::Approx(-1.0));
}
