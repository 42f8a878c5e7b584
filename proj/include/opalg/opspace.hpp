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

#include <cstddef>
#include <string>
#include <vector>

#include "opalg/cmat.hpp"

namespace opalg {

/// A linear subspace of M_n given by a linearly independent basis.
/// Immutable once built; construct through make_space or span_of.
class OpSpace {
 public:
  OpSpace() = default;

  const std::string& name() const { return name_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<CMat>& basis() const { return basis_; }
  /// Hilbert-Schmidt orthonormal basis spanning the same space.
  const std::vector<CMat>& onb() const { return onb_; }

  /// Coefficients of x in the original basis (x must lie in the span).
  std::vector<cplx> basis_coefficients(const CMat& x) const;
  /// Coefficients <onb_k, x>.
  std::vector<cplx> onb_coefficients(const CMat& x) const;
  /// Basis coefficients of onb element k.
  const std::vector<cplx>& onb_in_basis(std::size_t k) const { return onb_in_basis_[k]; }

  /// HS-orthogonal projection onto the space.
  CMat project(const CMat& x) const;
  /// ||x - project(x)||_HS.
  double residual(const CMat& x) const;
  /// residual(x) < eps_eq * max(1, ||x||_HS).
  bool contains(const CMat& x, const Tolerances& tol = {}) const;

  OpSpace renamed(std::string name) const;

 private:
  friend OpSpace make_space(std::size_t, std::vector<CMat>, std::string, const Tolerances&);

  std::string name_;
  std::size_t n_ = 0;
  std::vector<CMat> basis_;
  std::vector<CMat> onb_;
  std::vector<std::vector<cplx>> onb_in_basis_;
};

/// Validates the basis and builds the orthonormal basis.
/// Throws on shape mismatch or when the basis is numerically dependent
/// (smallest eigenvalue of the normalized Gram matrix below eps_psd).
OpSpace make_space(std::size_t ambient_dim, std::vector<CMat> basis, std::string name,
                   const Tolerances& tol = {});

/// Span of arbitrary matrices: keeps a maximal independent subfamily in order.
OpSpace span_of(std::size_t ambient_dim, const std::vector<CMat>& mats, std::string name,
                const Tolerances& tol = {});

struct StructureFlags {
  bool is_subalgebra = false;
  bool is_jordan_subalgebra = false;
  bool is_unital = false;
  bool is_selfadjoint = false;
  bool square_zero = false;
};

StructureFlags structure_flags(const OpSpace& s, const Tolerances& tol = {});

inline constexpr std::size_t kAmplifySizeCap = 512;

/// M_k(S) inside M_{kn}. Basis order: block (i, j) outer (row-major), basis
/// element inner.
OpSpace amplify_space(const OpSpace& s, std::size_t k,
                      std::size_t size_cap = kAmplifySizeCap);

/// span(S, I). Returns S unchanged when I is already in S.
OpSpace unitize(const OpSpace& s, const Tolerances& tol = {});

/// a ⊆ b as subspaces.
bool is_subspace(const OpSpace& a, const OpSpace& b, const Tolerances& tol = {});

/// Products x*y over onb pairs, saturated until closed: the algebra
/// generated by S (without adjoining the identity).
OpSpace generated_algebra(const OpSpace& s, const Tolerances& tol = {});

/// D A D ⊆ D for onb elements.
bool is_hereditary(const OpSpace& d, const OpSpace& a, const Tolerances& tol = {});

/// U(X) = {[[a 1, x], [0, b 1]] : a, b scalars, x in X} inside M_{2n}.
/// Basis: 1 ⊕ 0, 0 ⊕ 1, then the corner copies of the basis of X.
OpSpace paulsen_space(const OpSpace& x);

/// Upper-right corner embedding x -> [[0, x], [0, 0]] used by paulsen_space.
CMat paulsen_corner(const CMat& x);

/// A ∩ A^*, the largest selfadjoint subspace of S.
OpSpace selfadjoint_part(const OpSpace& s, const Tolerances& tol = {});

/// Span of the accretive elements {x in S : x + x^*  >= 0} of a subalgebra.
/// Computed as e S e where e is the unit of the C*-algebra S ∩ S^* (zero when
/// that is {0}). Throws when S is not a subalgebra.
OpSpace good_part(const OpSpace& s, const Tolerances& tol = {});

/// The projection e used by good_part.
CMat good_part_unit(const OpSpace& s, const Tolerances& tol = {});

struct AccretiveSearchOptions {
  int max_failures = 64;
  int dykstra_iterations = 400;
};

/// Seeded direction search for accretive elements by Dykstra projections
/// between {x in S : Re <g, x> = 1} and the accretive cone. Returns the
/// elements found; their span is a lower estimate of good_part.
std::vector<CMat> accretive_search(const OpSpace& s, const Tolerances& tol = {},
                                   const AccretiveSearchOptions& opts = {});

}  // namespace opalg
