// Copyright 2026 The opalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "opalg/cmat.hpp"

namespace opalg {

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Column k of `vectors` is the eigenvector for `values[k]`.
struct EigH {
  std::vector<double> values;
  CMat vectors;
};

/// Thin singular value decomposition a = u * diag(s) * v^*, s descending.
/// u is m x r, v is n x r with r = min(m, n). Columns of u belonging to
/// zero singular values are zero.
struct Svd {
  CMat u;
  std::vector<double> s;
  CMat v;
};

/// Cyclic Jacobi. Only the Hermitian part of `h` is used.
EigH eigh(const CMat& h);

/// One-sided (Hestenes) Jacobi.
Svd svd(const CMat& a);

double op_norm(const CMat& x);

bool is_hermitian(const CMat& h, double eps);
bool is_psd(const CMat& h, const Tolerances& tol = {});
double min_eigenvalue(const CMat& h);
/// Orthogonal projection test: q = q^* = q^2 within eps.
bool is_projection(const CMat& q, double eps);

struct HermDecomposition {
  CMat a, b;               // x = a + i b, both Hermitian
  CMat a_plus, a_minus;    // a = a_plus - a_minus, a_plus a_minus = 0
  CMat b_plus, b_minus;
};

HermDecomposition herm_decompose(const CMat& x);

/// Positive part of the Hermitian part of h (nearest PSD matrix in HS norm).
CMat psd_part(const CMat& h);

/// Nearest point of the operator-norm unit ball in HS norm: clips singular
/// values at 1.
CMat clip_to_unit_ball(const CMat& x);

/// Singular values within this distance of 1 count as 1 in tripotent_u.
inline constexpr double kTripotentThreshold = 1e-6;

/// The partial isometry sum of u_i v_i^* over singular values equal to 1.
/// Throws when ||x|| > 1 + eps_norm.
CMat tripotent_u(const CMat& x, const Tolerances& tol = {},
                 double threshold = kTripotentThreshold);

enum class Side { left, right };

/// Projection onto the span of column spaces (left) or row spaces (right) of
/// the given matrices. With an empty list `dim` must be given; the result is
/// then the zero projection.
CMat support(std::span<const CMat> elems, Side side, const Tolerances& tol = {},
             std::optional<std::size_t> dim = std::nullopt);

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Throws when a is numerically singular.
CMat solve(const CMat& a, const CMat& b);

/// Orthonormal basis (columns) of the span of the given column vectors,
/// numerical rank cut at eps_rel * sigma_max.
CMat column_span_basis(const CMat& cols, double eps_rel);

}  // namespace opalg
