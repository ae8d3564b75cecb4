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

#include "rpf/ensembles.hpp"

#include <cmath>
#include <limits>

#include "rpf/eigen.hpp"
#include "rpf/error.hpp"
#include "rpf/parallel.hpp"
#include "rpf/rng.hpp"

namespace rpf {

namespace {

// Matrix conventions below are calibrated so that the eigenvalue law is
// exactly exp(-(beta/4) sum x^2) |Delta|^beta; each was checked against the
// n = 1 variance 2/beta and the n = 2 second moment 2(beta+2)/beta.

// GOE: M = (A + A^T)/sqrt(2): diagonal N(0,2), off-diagonal N(0,1).
std::vector<double> sample_goe(std::size_t n, CounterRng& rng) {
    eigen::SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = std::sqrt(2.0) * rng.normal();
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = rng.normal();
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return eigen::symmetric_eigenvalues(std::move(m));
}

// GUE: diagonal N(0,1); off-diagonal real and imaginary parts N(0,1/2).
std::vector<double> sample_gue(std::size_t n, CounterRng& rng) {
    eigen::HermitianMatrix h(n);
    const double s = std::sqrt(0.5);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < n; ++j) {
            const double re = s * rng.normal();
            const double im = s * rng.normal();
            h(i, j) = {re, im};
            h(j, i) = {re, -im};
        }
    }
    return eigen::hermitian_eigenvalues(h);
}

// GSE: n x n quaternion self-dual matrix as a 2n x 2n complex Hermitian one;
// the quaternion q = a + bi + cj + dk maps to [[a+bi, c+di], [-c+di, a-bi]].
// Diagonal a ~ N(0,1/2); off-diagonal a, b, c, d ~ N(0,1/4).
std::vector<double> sample_gse(std::size_t n, CounterRng& rng) {
    eigen::HermitianMatrix h(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::sqrt(0.5) * rng.normal();
        h(2 * i, 2 * i) = a;
        h(2 * i + 1, 2 * i + 1) = a;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double qa = 0.5 * rng.normal();
            const double qb = 0.5 * rng.normal();
            const double qc = 0.5 * rng.normal();
            const double qd = 0.5 * rng.normal();
            const std::complex<double> blk[2][2] = {{{qa, qb}, {qc, qd}}, {{-qc, qd}, {qa, -qb}}};
            for (int u = 0; u < 2; ++u) {
                for (int v = 0; v < 2; ++v) {
                    h(2 * i + u, 2 * j + v) = blk[u][v];
                    h(2 * j + v, 2 * i + u) = std::conj(blk[u][v]);
                }
            }
        }
    }
    return eigen::hermitian_eigenvalues(h, 2);
}

// beta-Hermite tridiagonal model: diagonal N(0, 2/beta), off-diagonal
// chi_{beta k} / sqrt(beta) for k = n-1, ..., 1.
std::vector<double> sample_tridiagonal(double beta, std::size_t n, CounterRng& rng) {
    std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
    const double diag_sd = std::sqrt(2.0 / beta);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag_sd * rng.normal();
    const double off_scale = 1.0 / std::sqrt(beta);
    for (std::size_t i = 0; i + 1 < n; ++i)
        e[i] = off_scale * rng.chi(beta * static_cast<double>(n - 1 - i));
    return eigen::tridiagonal_eigenvalues(std::move(d), std::move(e));
}

Configuration sample_with_key(const EnsembleSpec& spec, std::uint64_t key) {
    CounterRng rng(key);
    std::vector<double> eigs;
    try {
        if (spec.method == SamplerMethod::tridiagonal) {
            eigs = sample_tridiagonal(spec.beta, spec.n, rng);
        } else if (spec.beta == 1.0) {
            eigs = sample_goe(spec.n, rng);
        } else if (spec.beta == 2.0) {
            eigs = sample_gue(spec.n, rng);
        } else {
            eigs = sample_gse(spec.n, rng);
        }
    } catch (const NumericalError& e) {
        throw NumericalError(std::string(e.what()) + " (matrix seed key " + std::to_string(key) +
                             ")");
    }
    return Configuration::from_reals(eigs);
}

}  // namespace

std::string to_string(ScalingKind kind) {
    switch (kind) {
        case ScalingKind::raw: return "raw";
        case ScalingKind::bulk: return "bulk";
        case ScalingKind::softedge: return "softedge";
    }
    return "?";
}

std::string to_string(SamplerMethod method) {
    return method == SamplerMethod::dense ? "dense" : "tridiagonal";
}

ScalingKind parse_scaling(const std::string& name) {
    if (name == "raw") return ScalingKind::raw;
    if (name == "bulk") return ScalingKind::bulk;
    if (name == "softedge") return ScalingKind::softedge;
    throw ArgumentError("unknown scaling '" + name + "' (expected raw|bulk|softedge)");
}

SamplerMethod parse_method(const std::string& name) {
    if (name == "dense") return SamplerMethod::dense;
    if (name == "tridiagonal") return SamplerMethod::tridiagonal;
    throw ArgumentError("unknown sampler method '" + name + "' (expected dense|tridiagonal)");
}

void EnsembleSpec::validate() const {
    if (n == 0) throw ArgumentError("ensemble size n must be >= 1");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ArgumentError("beta must be positive");
    if (method == SamplerMethod::dense && beta != 1.0 && beta != 2.0 && beta != 4.0)
        throw ArgumentError("dense sampler requires beta in {1, 2, 4}");
}

Configuration sample_gaussian_beta(const EnsembleSpec& spec) {
    spec.validate();
    return sample_with_key(spec, spec.seed);
}

Configuration sample_replica(const EnsembleSpec& spec, std::uint64_t replica) {
    spec.validate();
    return apply_scaling(sample_with_key(spec, stream_key(spec.seed, replica)), spec.n,
                         spec.scaling);
}

std::vector<Configuration> sample_replicas(const EnsembleSpec& spec, std::size_t count,
                                           std::size_t workers) {
    spec.validate();
    std::vector<Configuration> out(count);
    parallel_for(count, workers, [&](std::size_t i) { out[i] = sample_replica(spec, i); });
    return out;
}

double scale_point(double lambda, std::size_t n, ScalingKind kind) {
    const double nn = static_cast<double>(n);
    switch (kind) {
        case ScalingKind::raw: return lambda;
        case ScalingKind::bulk: return lambda / std::sqrt(nn);
        case ScalingKind::softedge: return std::cbrt(std::sqrt(nn)) * (lambda - 2.0 * std::sqrt(nn));
    }
    return lambda;
}

double unscale_point(double x, std::size_t n, ScalingKind kind) {
    const double nn = static_cast<double>(n);
    switch (kind) {
        case ScalingKind::raw: return x;
        case ScalingKind::bulk: return x * std::sqrt(nn);
        case ScalingKind::softedge: return 2.0 * std::sqrt(nn) + x / std::cbrt(std::sqrt(nn));
    }
    return x;
}

Configuration apply_scaling(const Configuration& eigs, std::size_t n, ScalingKind kind) {
    if (kind == ScalingKind::raw) return eigs;
    std::vector<Point> pts;
    pts.reserve(eigs.size());
    for (const auto& p : eigs) {
        if (p.imag() != 0.0) throw ArgumentError("apply_scaling expects real eigenvalues");
        pts.emplace_back(scale_point(p.real(), n, kind), 0.0);
    }
    // All three maps are increasing, so the order is preserved.
    return Configuration(std::move(pts));
}

double confinement(double beta, std::size_t n, ScalingKind kind, double x) {
    const double nn = static_cast<double>(n);
    switch (kind) {
        case ScalingKind::raw: return 0.25 * beta * x * x;
        case ScalingKind::bulk: return 0.25 * beta * x * x / nn;
        case ScalingKind::softedge: {
            const double n13 = std::cbrt(nn);
            return 0.25 * beta * (x * x / n13 + 4.0 * n13 * x);
        }
    }
    return 0.0;
}

double confinement_derivative(double beta, std::size_t n, ScalingKind kind, double x) {
    const double nn = static_cast<double>(n);
    switch (kind) {
        case ScalingKind::raw: return 0.5 * beta * x;
        case ScalingKind::bulk: return 0.5 * beta * x / nn;
        case ScalingKind::softedge: {
            const double n13 = std::cbrt(nn);
            return 0.25 * beta * (2.0 * x / n13 + 4.0 * n13);
        }
    }
    return 0.0;
}

double log_boltzmann(double beta, std::size_t n, ScalingKind kind, const Configuration& config) {
    const auto pts = config.points();
    double log_vdm = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double gap = std::abs(pts[i] - pts[j]);
            if (gap == 0.0) return -std::numeric_limits<double>::infinity();
            log_vdm += std::log(gap);
        }
    }
    double conf = 0.0;
    for (const auto& p : pts) conf += confinement(beta, n, kind, p.real());
    return beta * log_vdm - conf;
}

double log_density(double beta, std::size_t n, ScalingKind kind, const Configuration& config) {
    if (config.size() != n)
        throw ArgumentError("log_density: configuration has " + std::to_string(config.size()) +
                            " points, expected " + std::to_string(n));
    if (!config.is_real()) throw ArgumentError("log_density: points must be real");
    return log_boltzmann(beta, n, kind, config);
}

}  // namespace rpf
