// SPDX-License-Identifier: Apache-2.0
//
// irsdm: beamforming simulator for multi-IRS multi-stream links
// Copyright (C) 2026 The irsdm authors
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

#include "irsdm/numerics.hpp"
#include "irsdm/errors.hpp"

#include <cmath>
#include <string>

namespace irsdm
{

void require_finite(const CMatrix &A, const char *what)
{
    if (!A.allFinite())
        throw Error(ErrorKind::domain, std::string(what) + " has non-finite entries");
}

void require_square(const CMatrix &A, const char *what)
{
    if (A.rows() != A.cols())
        throw Error(ErrorKind::dimension, std::string(what) + " must be square, got " +
                                              std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
}

void fix_phase(CVector &v)
{
    if (v.size() == 0)
        return;
    Eigen::Index best = 0;
    double best_abs = std::abs(v[0]);
    for (Eigen::Index i = 1; i < v.size(); ++i)
    {
        // strict comparison with a small relative margin keeps ties at the lowest index
        const double a = std::abs(v[i]);
        if (a > best_abs * (1.0 + 1e-12))
        {
            best = i;
            best_abs = a;
        }
    }
    if (best_abs == 0.0)
        return;
    v *= std::conj(v[best]) / best_abs;
    v[best] = cdouble(best_abs, 0.0);
}

CMatrix hermitian_part(const CMatrix &A)
{
    return 0.5 * (A + A.adjoint());
}

EigPair hermitian_eig_max(const CMatrix &A)
{
    require_square(A, "hermitian_eig_max input");
    require_finite(A, "hermitian_eig_max input");
    if (A.rows() == 0)
        throw Error(ErrorKind::dimension, "hermitian_eig_max input is empty");

    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A));
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::conditioning, "Hermitian eigensolver did not converge");

    // Eigen sorts ascending; ties resolved by taking the last index.
    const Eigen::Index n = A.rows();
    EigPair out;
    out.value = es.eigenvalues()[n - 1];
    out.vector = es.eigenvectors().col(n - 1);
    out.vector.normalize();
    fix_phase(out.vector);
    return out;
}

double hermitian_lambda_max(const CMatrix &A)
{
    require_square(A, "hermitian_lambda_max input");
    if (A.rows() == 0)
        throw Error(ErrorKind::dimension, "hermitian_lambda_max input is empty");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error(ErrorKind::conditioning, "Hermitian eigensolver did not converge");
    return es.eigenvalues()[A.rows() - 1];
}

SvdResult svd(const CMatrix &A, bool full)
{
    SvdResult out;
    if (A.size() == 0)
    {
        out.U = CMatrix::Identity(A.rows(), full ? A.rows() : 0);
        out.V = CMatrix::Identity(A.cols(), full ? A.cols() : 0);
        out.S = RVector(0);
        return out;
    }
    const unsigned opts = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                               : (Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::JacobiSVD<CMatrix> dec(A, opts);
    out.U = dec.matrixU();
    out.S = dec.singularValues();
    out.V = dec.matrixV();
    return out;
}

CMatrix SvdResult::reconstruct() const
{
    const Eigen::Index r = S.size();
    return U.leftCols(r) * S.asDiagonal() * V.leftCols(r).adjoint();
}

CMatrix pseudo_inverse(const CMatrix &A)
{
    if (A.size() == 0)
        return CMatrix::Zero(A.cols(), A.rows());
    require_finite(A, "pseudo_inverse input");
    const SvdResult d = svd(A, false);
    const double smax = d.S.size() ? d.S[0] : 0.0;
    CMatrix out = CMatrix::Zero(A.cols(), A.rows());
    if (smax == 0.0)
        return out;
    const double cutoff = pinv_rel_cutoff * smax;
    for (Eigen::Index i = 0; i < d.S.size(); ++i)
    {
        if (d.S[i] <= cutoff)
            break;
        out.noalias() += d.V.col(i) * (1.0 / d.S[i]) * d.U.col(i).adjoint();
    }
    return out;
}

int numerical_rank(const CMatrix &A, double rel_tol)
{
    if (A.size() == 0)
        return 0;
    const SvdResult d = svd(A, false);
    if (d.S[0] == 0.0)
        return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < d.S.size(); ++i)
        if (d.S[i] > rel_tol * d.S[0])
            ++r;
    return r;
}

CVector generalized_rayleigh_max(const CMatrix &num, const RVector &den)
{
    require_square(num, "generalized_rayleigh_max numerator");
    if (den.size() != num.rows())
        throw Error(ErrorKind::dimension, "generalized_rayleigh_max: denominator size mismatch");
    for (Eigen::Index i = 0; i < den.size(); ++i)
        if (!(den[i] > 0.0))
            throw Error(ErrorKind::domain, "generalized_rayleigh_max: denominator entry " +
                                               std::to_string(i) + " is not positive");

    const RVector inv_sqrt = den.cwiseSqrt().cwiseInverse();
    const CMatrix whitened = inv_sqrt.asDiagonal() * hermitian_part(num) * inv_sqrt.asDiagonal();
    CVector x = inv_sqrt.asDiagonal() * hermitian_eig_max(whitened).vector;
    x.normalize();
    fix_phase(x);
    return x;
}

double log_det_hpd(const CMatrix &A)
{
    require_square(A, "log_det_hpd input");
    Eigen::LLT<CMatrix> llt(hermitian_part(A));
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::conditioning, "matrix is not positive definite");
    const auto &L = llt.matrixLLT();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < L.rows(); ++i)
        acc += 2.0 * std::log(L(i, i).real());
    return acc;
}

double log_det_ratio(const CMatrix &A, const CMatrix &B)
{
    require_square(A, "log_det_ratio numerator");
    require_square(B, "log_det_ratio denominator");
    if (A.rows() != B.rows())
        throw Error(ErrorKind::dimension, "log_det_ratio operands differ in size");
    Eigen::LLT<CMatrix> llt(hermitian_part(B));
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::conditioning, "denominator matrix is not positive definite");
    // M = L^{-1} A L^{-H}
    const auto L = llt.matrixL();
    CMatrix X = L.solve(hermitian_part(A));
    CMatrix Mt = L.solve(X.adjoint().eval());
    CMatrix I_plus = CMatrix::Identity(A.rows(), A.rows()) + hermitian_part(Mt);
    return log_det_hpd(I_plus);
}

} // namespace irsdm
