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

#include "simsec/transceiver.hpp"

#include <cmath>
#include <sstream>

namespace simsec {

void AntennaConfig::validate() const
{
    std::ostringstream os;
    os << "antenna config (n_t=" << n_t << ", n_r=" << n_r << ", n_j=" << n_j << ", n_e=" << n_e << "): ";
    if (!(n_j >= 0 && n_r > n_j && n_t > n_r))
        throw Error(ErrorKind::config, os.str() + "need n_t > n_r > n_j >= 0");
    if (n_e < 1 || n_e > n_t - n_r)
        throw Error(ErrorKind::config, os.str() + "need 1 <= n_e <= n_t - n_r");
}

PowerPolicy PowerPolicy::with_defaults(double P, int n_r, double rho)
{
    PowerPolicy p;
    p.P = P;
    p.rho = rho;
    p.kxs_scale = 1.0 / n_r;
    return p;
}

void PowerPolicy::validate(int n_r) const
{
    if (!(P > 0.0) || !std::isfinite(P))
        throw Error(ErrorKind::config, "power policy: P must be positive and finite");
    if (!(rho > 0.0 && rho < 1.0))
        throw Error(ErrorKind::config, "power policy: rho must lie in (0, 1)");
    if (!(sigma2 > 0.0 && sigma2_eve > 0.0))
        throw Error(ErrorKind::config, "power policy: noise variances must be positive");
    if (!(kxs_scale > 0.0 && kxs_scale <= 1.0 / n_r + 1e-15))
        throw Error(ErrorKind::config, "power policy: kxs_scale must lie in (0, 1/n_r]");
}

ChannelSet sample_channels(const AntennaConfig &config, Rng &rng)
{
    config.validate();
    ChannelSet ch;
    ch.Hd = random_gaussian_matrix(config.n_r, config.n_t, rng);
    ch.He = random_gaussian_matrix(config.n_e, config.n_t, rng);
    ch.Hj = random_gaussian_matrix(config.n_r, config.n_j, rng);
    return ch;
}

ComplexMatrix eve_effective_channel(const ComplexMatrix &Ge, const ComplexMatrix &Gj)
{
    if (Ge.rows() != Gj.rows())
        throw Error(ErrorKind::invalid_shape, "eve_effective_channel: Ge and Gj row counts differ");
    if (Gj.cols() > 0 && Ge.rows() <= Gj.cols())
        throw Error(ErrorKind::insufficient_antennas,
                    "eve_effective_channel: eavesdropper cannot null the jammer (N_e <= n_j)");
    return left_nullspace_basis(Gj).adjoint() * Ge;
}

Precoders tx_precoders_perfect(const ComplexMatrix &Hd)
{
    const Index n_r = Hd.rows(), n_t = Hd.cols();
    if (n_t <= n_r)
        throw Error(ErrorKind::no_nullspace, "tx_precoders_perfect: need n_t > n_r");
    const SvdResult dec = svd(Hd);
    if (dec.singular_values(n_r - 1) < rank_tolerance * dec.singular_values(0))
        throw Error(ErrorKind::degenerate_channel, "tx_precoders_perfect: Hd is rank deficient");
    return {dec.V.leftCols(n_r), dec.V.rightCols(n_t - n_r), CsiMode::perfect};
}

Precoders tx_precoders_quantized(const GrassmannPoint &Fhat)
{
    const ComplexMatrix &W1 = Fhat.basis();
    return {W1, nullspace_basis(W1.adjoint()), CsiMode::quantized};
}

ComplexMatrix rx_nuller(const ComplexMatrix &Hj)
{
    if (Hj.cols() > 0 && Hj.rows() <= Hj.cols())
        throw Error(ErrorKind::insufficient_antennas, "rx_nuller: receiver cannot null the jammer (n_r <= n_j)");
    return left_nullspace_basis(Hj);
}

GrassmannPoint channel_subspace(const ComplexMatrix &Hd)
{
    return GrassmannPoint(qr_tall(Hd.adjoint()).F);
}

ReceiverFilters rx_postfilter(const ComplexMatrix &Hd, const ComplexMatrix &Hj, const ComplexMatrix &B)
{
    QrTallResult qr = qr_tall(Hd.adjoint());
    ComplexMatrix V = rx_nuller(Hj);
    const Index d_s = V.cols();
    if (B.rows() != Hd.cols() || B.cols() != d_s)
        throw Error(ErrorKind::invalid_shape, "rx_postfilter: B must be n_t x d_s");
    if ((B.adjoint() * B - ComplexMatrix::Identity(d_s, d_s)).norm() > 1e-10)
        throw Error(ErrorKind::invalid_input, "rx_postfilter: B must have orthonormal columns");

    const ComplexMatrix CV = qr.C * V;
    const ComplexMatrix gram = hermitian_part(CV.adjoint() * CV);
    Eigen::LLT<ComplexMatrix> llt(gram);
    if (llt.info() != Eigen::Success || min_eigenvalue(gram) <= 1e-14 * gram.norm())
        throw Error(ErrorKind::degenerate_channel, "rx_postfilter: V^* C^* C V is singular");

    const ComplexMatrix G_adj = B.adjoint() * qr.F * CV * llt.solve(ComplexMatrix::Identity(d_s, d_s));
    ReceiverFilters out;
    out.G = G_adj.adjoint();
    out.V = std::move(V);
    out.B = B;
    out.F = std::move(qr.F);
    out.C = std::move(qr.C);

    if (min_eigenvalue(out.G.adjoint() * out.G) <= 1e-12 * (out.G.adjoint() * out.G).norm())
        throw Error(ErrorKind::degenerate_channel, "rx_postfilter: G^* G is not positive definite");
    return out;
}

ReceiverFilters rx_postfilter(const ComplexMatrix &Hd, const ComplexMatrix &Hj, Rng &rng)
{
    const Index d_s = Hd.rows() - Hj.cols();
    if (d_s < 1)
        throw Error(ErrorKind::insufficient_antennas, "rx_postfilter: n_r <= n_j");
    return rx_postfilter(Hd, Hj, random_truncated_unitary(Hd.cols(), d_s, rng));
}

double leakage_power(const ReceiverFilters &filters, const ComplexMatrix &Hd,
                     const ComplexMatrix &W2Q, const PowerPolicy &policy)
{
    if (W2Q.rows() != Hd.cols())
        throw Error(ErrorKind::invalid_shape, "leakage_power: W2Q does not match Hd");
    const ComplexMatrix leak = filters.G.adjoint() * filters.V.adjoint() * Hd * W2Q;
    return policy.an_power(int(W2Q.cols())) * leak.squaredNorm();
}

double leakage_bound(const PowerPolicy &policy, std::int64_t n_f, const AntennaConfig &config)
{
    const double delta = quant_error_bound(n_f, config.n_t, config.n_r);
    return 2.0 * (1.0 - policy.rho) * policy.P / config.an_dim() * delta * delta;
}

} // namespace simsec
