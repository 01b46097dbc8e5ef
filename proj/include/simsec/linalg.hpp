// SPDX-License-Identifier: Apache-2.0
//
// simsec - secure MIMO links with artificial noise and quantized feedback
// Copyright (C) 2026 The simsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "simsec/errors.hpp"

namespace simsec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Every random draw in the library goes through an explicitly passed engine.
using Rng = std::mt19937_64;

struct SvdResult
{
    ComplexMatrix U;            // m x m unitary
    RealVector singular_values; // nonincreasing, length min(m, n)
    ComplexMatrix V;            // n x n unitary
};

struct QrTallResult
{
    ComplexMatrix F; // m x k, orthonormal columns
    ComplexMatrix C; // k x k upper triangular with positive real diagonal
};

// Relative singular-value cutoff used for every rank decision.
inline constexpr double rank_tolerance = 1e-12;

bool all_finite(const ComplexMatrix &A);

// Full SVD, singular values sorted nonincreasing. Throws invalid_input on NaN/Inf.
SvdResult svd(const ComplexMatrix &A);

// Thin QR of a tall full-column-rank matrix, A = F * C.
// The diagonal of C is made real positive so the factorization is unique.
QrTallResult qr_tall(const ComplexMatrix &A);

// Orthonormal basis of Nul(A) for a wide full-row-rank A (p < q), q x (q - p).
ComplexMatrix nullspace_basis(const ComplexMatrix &A);

// Orthonormal basis of the left nullspace of a tall full-column-rank A
// (p > q), p x (p - q). A matrix with zero columns yields the identity.
ComplexMatrix left_nullspace_basis(const ComplexMatrix &A);

// (A + A^*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix &A);

// log2 det(A) for Hermitian positive-definite A, via Cholesky.
double logdet_pd(const ComplexMatrix &A);

// Entries i.i.d. CN(0,1).
ComplexMatrix random_gaussian_matrix(Index m, Index n, Rng &rng);

// Haar-distributed m x k matrix with orthonormal columns.
ComplexMatrix random_truncated_unitary(Index m, Index k, Rng &rng);

// Mutual information (bits) of y = H x + i + n with x ~ CN(0, K),
// i ~ CN(0, Sigma), n ~ CN(0, noise_var I):
//   log2 det(H K H^* + Sigma + s I) - log2 det(Sigma + s I).
// Evaluated from Hermitian eigenvalues, independently of logdet_pd.
double gaussian_mi(const ComplexMatrix &channel,
                   const ComplexMatrix &signal_cov,
                   const ComplexMatrix &interference_cov,
                   double noise_var);

// Smallest eigenvalue of the Hermitian part of A.
double min_eigenvalue(const ComplexMatrix &A);

} // namespace simsec
