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

#include "simsec/linalg.hpp"

#include <cmath>
#include <sstream>

namespace simsec {

const char *to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::invalid_shape: return "invalid shape";
    case ErrorKind::degenerate_channel: return "degenerate channel";
    case ErrorKind::no_nullspace: return "no nullspace";
    case ErrorKind::not_positive_definite: return "not positive definite";
    case ErrorKind::insufficient_antennas: return "insufficient antennas";
    case ErrorKind::codebook_too_large: return "codebook too large";
    case ErrorKind::empty_codebook: return "empty codebook";
    case ErrorKind::bracket_failure: return "bracket failure";
    case ErrorKind::config: return "config error";
    case ErrorKind::io: return "i/o error";
    }
    return "unknown error";
}

namespace {

std::string shape_of(const ComplexMatrix &A)
{
    std::ostringstream os;
    os << A.rows() << "x" << A.cols();
    return os.str();
}

void require_finite(const ComplexMatrix &A, const char *op)
{
    if (!all_finite(A))
        throw Error(ErrorKind::invalid_input, std::string(op) + ": non-finite entry in input");
}

// Throws degenerate_channel when the smallest singular value falls below the
// relative cutoff.
void require_full_rank(const RealVector &sv, const char *op)
{
    if (sv.size() == 0)
        return;
    const double largest = sv(0);
    const double smallest = sv(sv.size() - 1);
    if (!(largest > 0.0) || smallest < rank_tolerance * largest)
    {
        std::ostringstream os;
        os << op << ": rank-deficient input (sigma_min = " << smallest
           << ", sigma_max = " << largest << ")";
        throw Error(ErrorKind::degenerate_channel, os.str());
    }
}

double psd_slack(const ComplexMatrix &A)
{
    return -1e-10 * std::max(1.0, A.norm());
}

} // namespace

bool all_finite(const ComplexMatrix &A)
{
    for (Index j = 0; j < A.cols(); ++j)
        for (Index i = 0; i < A.rows(); ++i)
            if (!std::isfinite(A(i, j).real()) || !std::isfinite(A(i, j).imag()))
                return false;
    return true;
}

SvdResult svd(const ComplexMatrix &A)
{
    require_finite(A, "svd");
    Eigen::JacobiSVD<ComplexMatrix> dec(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

QrTallResult qr_tall(const ComplexMatrix &A)
{
    require_finite(A, "qr_tall");
    const Index m = A.rows(), k = A.cols();
    if (k < 1 || m < k)
        throw Error(ErrorKind::invalid_shape, "qr_tall: expected tall matrix, got " + shape_of(A));

    Eigen::JacobiSVD<ComplexMatrix> sv(A);
    require_full_rank(sv.singularValues(), "qr_tall");

    Eigen::HouseholderQR<ComplexMatrix> qr(A);
    ComplexMatrix F = qr.householderQ() * ComplexMatrix::Identity(m, k);
    ComplexMatrix C = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

    // Rotate phases so diag(C) is real positive.
    for (Index j = 0; j < k; ++j)
    {
        const double mag = std::abs(C(j, j));
        const Complex phase = C(j, j) / mag;
        F.col(j) *= phase;
        C.row(j) *= std::conj(phase);
        C(j, j) = Complex(mag, 0.0);
    }
    return {std::move(F), std::move(C)};
}

ComplexMatrix nullspace_basis(const ComplexMatrix &A)
{
    const Index p = A.rows(), q = A.cols();
    if (p >= q)
        throw Error(ErrorKind::no_nullspace, "nullspace_basis: input " + shape_of(A) + " is not wide");
    if (p == 0)
        return ComplexMatrix::Identity(q, q);
    const SvdResult dec = svd(A);
    require_full_rank(dec.singular_values, "nullspace_basis");
    return dec.V.rightCols(q - p);
}

ComplexMatrix left_nullspace_basis(const ComplexMatrix &A)
{
    const Index p = A.rows(), q = A.cols();
    if (q == 0)
        return ComplexMatrix::Identity(p, p);
    if (p <= q)
        throw Error(ErrorKind::no_nullspace, "left_nullspace_basis: input " + shape_of(A) + " is not tall");
    const SvdResult dec = svd(A);
    require_full_rank(dec.singular_values, "left_nullspace_basis");
    return dec.U.rightCols(p - q);
}

ComplexMatrix hermitian_part(const ComplexMatrix &A)
{
    return 0.5 * (A + A.adjoint());
}

double min_eigenvalue(const ComplexMatrix &A)
{
    if (A.rows() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(A), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double logdet_pd(const ComplexMatrix &A)
{
    require_finite(A, "logdet_pd");
    if (A.rows() != A.cols())
        throw Error(ErrorKind::invalid_shape, "logdet_pd: matrix " + shape_of(A) + " is not square");
    if ((A - A.adjoint()).norm() > 1e-10 * std::max(1.0, A.norm()))
        throw Error(ErrorKind::invalid_input, "logdet_pd: matrix is not Hermitian");

    const ComplexMatrix H = hermitian_part(A);
    Eigen::LLT<ComplexMatrix> llt(H);
    if (llt.info() != Eigen::Success)
    {
        const double lmin = min_eigenvalue(H);
        std::ostringstream os;
        os << "logdet_pd: smallest eigenvalue " << lmin << " is not positive";
        throw NotPositiveDefinite(lmin, os.str());
    }
    const ComplexMatrix &L = llt.matrixLLT();
    double acc = 0.0;
    for (Index i = 0; i < L.rows(); ++i)
    {
        const double d = L(i, i).real();
        if (!(d > 0.0))
            throw NotPositiveDefinite(d * d, "logdet_pd: vanishing Cholesky pivot");
        acc += std::log2(d);
    }
    return 2.0 * acc;
}

ComplexMatrix random_gaussian_matrix(Index m, Index n, Rng &rng)
{
    if (m < 0 || n < 0)
        throw Error(ErrorKind::invalid_shape, "random_gaussian_matrix: negative dimension");
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    ComplexMatrix out(m, n);
    // Column-major fill; the draw order is part of the reproducibility contract.
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            out(i, j) = Complex(re, im);
        }
    return out;
}

ComplexMatrix random_truncated_unitary(Index m, Index k, Rng &rng)
{
    if (k < 1 || m < k)
        throw Error(ErrorKind::invalid_shape, "random_truncated_unitary: need m >= k >= 1");
    // QR of a Gaussian matrix with positive diag(R) is Haar distributed.
    for (int attempt = 0; attempt < 8; ++attempt)
    {
        try
        {
            return qr_tall(random_gaussian_matrix(m, k, rng)).F;
        }
        catch (const Error &e)
        {
            if (e.kind() != ErrorKind::degenerate_channel)
                throw;
        }
    }
    throw Error(ErrorKind::degenerate_channel, "random_truncated_unitary: repeated rank-deficient draws");
}

double gaussian_mi(const ComplexMatrix &channel,
                   const ComplexMatrix &signal_cov,
                   const ComplexMatrix &interference_cov,
                   double noise_var)
{
    const Index p = channel.rows(), q = channel.cols();
    if (signal_cov.rows() != q || signal_cov.cols() != q)
        throw Error(ErrorKind::invalid_shape, "gaussian_mi: signal covariance does not match channel columns");
    const bool has_interference = interference_cov.size() != 0;
    if (has_interference && (interference_cov.rows() != p || interference_cov.cols() != p))
        throw Error(ErrorKind::invalid_shape, "gaussian_mi: interference covariance does not match channel rows");
    if (!(noise_var > 0.0))
        throw Error(ErrorKind::invalid_input, "gaussian_mi: noise variance must be positive");
    if (min_eigenvalue(signal_cov) < psd_slack(signal_cov))
        throw Error(ErrorKind::not_positive_definite, "gaussian_mi: signal covariance is not PSD");
    if (has_interference && min_eigenvalue(interference_cov) < psd_slack(interference_cov))
        throw Error(ErrorKind::not_positive_definite, "gaussian_mi: interference covariance is not PSD");

    ComplexMatrix base = noise_var * ComplexMatrix::Identity(p, p);
    if (has_interference)
        base += interference_cov;
    const ComplexMatrix total = base + channel * signal_cov * channel.adjoint();

    auto log2det = [](const ComplexMatrix &M) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(M), Eigen::EigenvaluesOnly);
        double acc = 0.0;
        for (Index i = 0; i < es.eigenvalues().size(); ++i)
            acc += std::log2(es.eigenvalues()(i));
        return acc;
    };
    return log2det(total) - log2det(base);
}

} // namespace simsec
