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

// Dense complex linear algebra used by every solver. Thin contracts over
// Eigen with fixed tolerances and a deterministic eigenvector phase.

#ifndef IRSDM_NUMERICS_HPP
#define IRSDM_NUMERICS_HPP

#include <Eigen/Dense>

#include <complex>

namespace irsdm
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;

/// Relative cutoff below which singular values count as zero in pseudo_inverse.
inline constexpr double pinv_rel_cutoff = 1e-12;

/// Throws ErrorKind::domain if any entry is NaN or Inf. `what` names the operand.
void require_finite(const CMatrix &A, const char *what);

/// Throws ErrorKind::dimension unless A is square.
void require_square(const CMatrix &A, const char *what);

/// Rotates v so that its largest-magnitude entry (lowest index on ties) is real positive.
void fix_phase(CVector &v);

struct EigPair
{
    double value = 0.0;
    CVector vector;
};

/// Largest eigenvalue of a Hermitian matrix and its unit eigenvector.
/// The input is symmetrized as (A + A^H)/2 first.
EigPair hermitian_eig_max(const CMatrix &A);

/// Largest eigenvalue only (cheaper; no eigenvectors).
double hermitian_lambda_max(const CMatrix &A);

/// Moore-Penrose pseudo-inverse via SVD; singular values below
/// pinv_rel_cutoff * sigma_max are treated as zero.
CMatrix pseudo_inverse(const CMatrix &A);

struct SvdResult
{
    CMatrix U;      // rows x rows (full) or rows x r (thin)
    RVector S;      // min(rows, cols), descending
    CMatrix V;      // cols x cols (full) or cols x r (thin)

    /// U * diag(S) * V^H with the shapes padded as needed.
    CMatrix reconstruct() const;
};

/// Singular value decomposition with descending singular values.
SvdResult svd(const CMatrix &A, bool full = true);

/// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const CMatrix &A, double rel_tol = 1e-10);

/// argmax over unit x of (x^H num x) / (x^H diag(den) x). den must be > 0.
/// Solved exactly by diagonal whitening; result has unit norm.
CVector generalized_rayleigh_max(const CMatrix &num, const RVector &den);

/// log det(I + B^{-1/2} A B^{-1/2}) in nats for Hermitian PSD A and Hermitian PD B.
/// Throws ErrorKind::conditioning if B is not numerically positive definite.
double log_det_ratio(const CMatrix &A, const CMatrix &B);

/// log det of a Hermitian positive definite matrix, in nats.
double log_det_hpd(const CMatrix &A);

/// (A + A^H) / 2.
CMatrix hermitian_part(const CMatrix &A);

} // namespace irsdm

#endif
