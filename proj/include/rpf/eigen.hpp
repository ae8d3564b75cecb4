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

// Eigenvalues of real symmetric and complex Hermitian matrices:
// Householder reduction to tridiagonal form, then implicit QL with
// Wilkinson-type shifts. Eigenvalues only.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rpf::eigen {

/// Maximum QL sweeps spent on any single eigenvalue.
inline constexpr int kMaxSweepsPerEigenvalue = 64;

/// Dense n x n matrix, row-major.
struct SymmetricMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit SymmetricMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct HermitianMatrix {
    std::size_t n = 0;
    std::vector<std::complex<double>> a;

    explicit HermitianMatrix(std::size_t size) : n(size), a(size * size) {}
    std::complex<double>& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    std::complex<double> operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Householder tridiagonalization; returns (diagonal, subdiagonal) with
/// offdiag[i] coupling entries i and i+1. The input is consumed.
void tridiagonalize(SymmetricMatrix& m, std::vector<double>& diag, std::vector<double>& offdiag);

/// Eigenvalues of the symmetric tridiagonal matrix, ascending.
/// Throws NumericalError after kMaxSweepsPerEigenvalue sweeps on one eigenvalue.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag);

/// Eigenvalues of a dense symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(SymmetricMatrix m);

/// Eigenvalues of a Hermitian matrix via the real 2n x 2n embedding
/// [[A, -B], [B, A]]; every eigenvalue appears twice there and is returned
/// once. `multiplicity` > 1 additionally collapses known degeneracies of H
/// itself (2 for quaternion self-dual matrices).
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, std::size_t multiplicity = 1);

/// Collapse groups of `k` consecutive sorted values into their mean. Throws
/// NumericalError when a group spreads by more than `rel_tol` times the
/// spectral radius.
std::vector<double> collapse_multiplets(std::span<const double> sorted, std::size_t k,
                                        double rel_tol = 1e-8);

}  // namespace rpf::eigen
