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

#include "rpf/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rpf/error.hpp"

namespace rpf::eigen {

void tridiagonalize(SymmetricMatrix& m, std::vector<double>& diag, std::vector<double>& offdiag) {
    const std::size_t n = m.n;
    diag.assign(n, 0.0);
    // e[i] couples i-1 and i during the reduction; shifted down at the end.
    std::vector<double> e(n, 0.0);
    if (n == 0) {
        offdiag.clear();
        return;
    }

    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::abs(m(i, k));
            if (scale == 0.0) {
                e[i] = m(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    m(i, k) /= scale;
                    h += m(i, k) * m(i, k);
                }
                double f = m(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                m(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (std::size_t k = 0; k <= j; ++k) g += m(j, k) * m(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += m(k, j) * m(i, k);
                    e[j] = g / h;
                    f += e[j] * m(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = m(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k <= j; ++k) m(j, k) -= (f * e[k] + g * m(i, k));
                }
            }
        } else {
            e[i] = m(i, l);
        }
        if (i == 1) break;
    }
    for (std::size_t i = 0; i < n; ++i) diag[i] = m(i, i);
    offdiag.assign(n > 0 ? n - 1 : 0, 0.0);
    for (std::size_t i = 1; i < n; ++i) offdiag[i - 1] = e[i];
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> offdiag) {
    const std::size_t n = d.size();
    if (n == 0) return d;
    if (offdiag.size() + 1 != n) throw ArgumentError("tridiagonal: offdiag must have n-1 entries");

    std::vector<double> e(n, 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int sweeps = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (sweeps++ == kMaxSweepsPerEigenvalue)
                    throw NumericalError("implicit QL did not converge for eigenvalue " +
                                         std::to_string(l) + " after " +
                                         std::to_string(kMaxSweepsPerEigenvalue) + " sweeps");
                // Shift: eigenvalue of the leading 2x2 block closest to d[l].
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool deflated = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = (r = std::hypot(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                }
                if (deflated) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> symmetric_eigenvalues(SymmetricMatrix m) {
    std::vector<double> d, e;
    tridiagonalize(m, d, e);
    return tridiagonal_eigenvalues(std::move(d), std::move(e));
}

std::vector<double> collapse_multiplets(std::span<const double> sorted, std::size_t k,
                                        double rel_tol) {
    if (k == 0 || sorted.size() % k != 0)
        throw ArgumentError("collapse_multiplets: size not divisible by multiplicity");
    double radius = 0.0;
    for (double v : sorted) radius = std::max(radius, std::abs(v));
    const double tol = rel_tol * std::max(radius, 1.0);
    std::vector<double> out;
    out.reserve(sorted.size() / k);
    for (std::size_t g = 0; g < sorted.size(); g += k) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) sum += sorted[g + j];
        if (sorted[g + k - 1] - sorted[g] > tol)
            throw NumericalError("eigenvalue multiplet spread " +
                                 std::to_string(sorted[g + k - 1] - sorted[g]) +
                                 " exceeds tolerance " + std::to_string(tol));
        out.push_back(sum / static_cast<double>(k));
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, std::size_t multiplicity) {
    const std::size_t n = h.n;
    SymmetricMatrix m(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = h(i, j).real();
            const double im = h(i, j).imag();
            m(i, j) = re;
            m(i + n, j + n) = re;
            m(i, j + n) = -im;
            m(i + n, j) = im;
        }
    }
    const auto all = symmetric_eigenvalues(std::move(m));
    return collapse_multiplets(all, 2 * multiplicity);
}

}  // namespace rpf::eigen
