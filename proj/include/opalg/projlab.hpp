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
#include <optional>
#include <string>
#include <vector>

#include "opalg/cbmaps.hpp"
#include "opalg/certificate.hpp"
#include "opalg/cmat.hpp"
#include "opalg/opspace.hpp"

namespace opalg {

/// A structural check that was not run because its hypothesis failed.
struct SkipRecord {
  std::string check;
  std::string hypothesis;
  CMat witness;
};

struct MacReport {
  CMat p1, p2, p;
  bool left_condition = false;
  bool right_condition = false;
  std::size_t kernel_dim = 0;  // dim (I - P)(D)
};

struct M3Values {
  double re_norm = 0.0;
  double u_sq_norm = 0.0;
  double orth_residual = 0.0;
};

struct SlowBound {
  int n = 0;
  double value = 0.0;  // ||x^(2^n)||
  double bound = 0.0;  // 2 / 2^(2^n)
};

/// Per-element results of the square-zero-ideal analysis.
struct Section5Element {
  CMat x;  // normalized, ||x|| = 1
  double m1_residual = 0.0;
  double m2_residual = 0.0;
  M3Values m3;
  bool nilpotent = false;
  std::size_t nilpotency_index = 0;
  std::vector<SlowBound> slow;
  bool quasi_regular = false;
  /// ||e x|| + ||x e|| when e is known.
  double corner_residual = 0.0;
};

struct Section5Report {
  CMat e;  // empty unless an extension to a C*-algebra was supplied
  /// Sampled ratio sup ||Re (I-P)(x)|| / ||Re x||; the hypothesis holds when <= 1.
  double re_complement_ratio = 0.0;
  bool re_hypothesis = false;
  double m1_residual = 0.0;
  double m2_residual = 0.0;
  M3Values m3;  // worst deviation from (1/2, 0, 0) across elements
  bool matre_nilpotent = true;
  std::vector<SlowBound> slow_bounds;  // worst ratio value / bound per n
  bool quasi_regular = true;
  std::vector<Section5Element> elements;
};

struct RangeKernelReport {
  bool C2_in_B = false;
  bool BmodC = false;
  bool C3_in_B = false;
  bool kernel_is_subalgebra = false;
  bool squarezero = false;      // (I - P)(D) squares to zero
  bool ideal_in_D = false;      // (I - P)(D) is an ideal of D
  std::size_t kernel_dim = 0;   // dim Ker P
  std::size_t ideal_dim = 0;    // dim (I - P)(D)
  double condexp_residual = 0.0;
  double choi_effros_assoc = 0.0;
};

struct ClassifyOptions {
  /// Highest level searched; 0 means the smith level.
  std::size_t max_level = 0;
  NormSearchOptions search{};
  int hermitian_points = 16;
  /// Level of the hermitian grid search; 0 means max_level.
  std::size_t hermitian_level = 0;
  NormSearchOptions hermitian_search = search_with_restarts(8);
  bool run_section5 = true;
  /// Completely contractive extension of P to a C*-algebra, used for the
  /// support projection in the square-zero kernel suite.
  const OpMap* extension = nullptr;
};

/// Optional certificates for P, I - P and 2P - I.
struct ProjectionCertificates {
  std::optional<Certificate> p, complement, reflection;
};

struct CertifiedBound {
  bool valid = false;
  double upper = 0.0;
  std::string failure;
};

struct Verdicts {
  bool contractive = false;    // ||P||_cb <= 1
  bool bicontractive = false;  // also ||I - P||_cb <= 1
  bool symmetric = false;      // ||2P - I||_cb <= 1
  bool hermitian = false;      // grid sup <= 1
  /// Set when the verdict rests on certificates rather than lower bounds.
  bool contractive_certified = false;
  bool bicontractive_certified = false;
  bool symmetric_certified = false;
};

struct ProjectionReport {
  std::string name;
  double idempotent_residual = 0.0;
  bool unital = false;  // domain contains 1
  std::vector<NormReport> p_levels, complement_levels, reflection_levels;
  std::optional<CertifiedBound> p_cert, complement_cert, reflection_cert;
  double hermitian_sup = 0.0;
  double hermitian_argmax = 0.0;  // t attaining hermitian_sup
  CMat q;
  bool q_is_projection = false;
  std::optional<double> split_residual;
  /// ||P(x) - q P(x) q|| over the basis; zero means Ran P = q Ran P q.
  std::optional<double> corner_residual;
  StructureFlags range_flags;
  std::size_t range_dim = 0;
  RangeKernelReport rk;
  bool reduced = false;  // mac and section5 ran on the unital compression
  std::optional<MacReport> mac;
  std::optional<Section5Report> section5;
  Verdicts verdicts;
  std::vector<SkipRecord> skipped;

  double p_lower() const;
  double complement_lower() const;
  double reflection_lower() const;
};

/// Requires an idempotent endomap whose domain is a subalgebra.
ProjectionReport classify_projection(const OpMap& p, const Tolerances& tol = {},
                                     const ProjectionCertificates& certs = {},
                                     const ClassifyOptions& opts = {});

/// I - P and 2P - I on the domain of P.
OpMap complement_map(const OpMap& p);
OpMap reflection_map(const OpMap& p);
/// I - P + e^{it} P.
OpMap hermitian_rotation(const OpMap& p, double t);

RangeKernelReport range_kernel_structure(const OpMap& p, const Tolerances& tol = {});

/// The compression P' of P to q A q (q = P(1)) restricted to the algebra D
/// generated by Ran P. Empty when q is not a projection or Ran P is not in
/// the corner.
std::optional<OpMap> unital_reduction(const OpMap& p, const Tolerances& tol = {});

struct SymmetricDecomposition {
  bool ok = false;
  OpMap theta;  // a -> (2P(a) - a)(2q - 1)
  CMat q;
  double involution_residual = 0.0;  // theta ∘ theta - I
  double hom_residual = 0.0;         // theta(xy) - theta(x) theta(y)
  double fixed_q_residual = 0.0;     // theta(q) - q
  double formula_residual = 0.0;     // P(a) - (a + theta(a)(2q - 1)) / 2
  double reflection_lower = 0.0;
  std::string failure;
  CMat witness;  // when the norm test fails: ||(2P - I)(witness)|| > ||witness||
};

/// Evidence of symmetry is the certificate for 2P - I when given, otherwise
/// the norm search at `level` (0: smith level).
SymmetricDecomposition symmetric_decompose(const OpMap& p, const Tolerances& tol = {},
                                           const Certificate* reflection_certificate = nullptr,
                                           std::size_t level = 0,
                                           const NormSearchOptions& search = {});

/// P(a) = (a + theta(a)(2q - 1)) / 2. Throws with the violated condition.
OpMap symmetric_build(const OpMap& theta, const CMat& q, const Tolerances& tol = {});

/// Requires P unital on its domain.
MacReport mac_check(const OpMap& p, const Tolerances& tol = {});

struct SupportReport {
  CMat e;
  int rounds = 0;
  /// Max of ||P(x e) - P(x)||, ||P(x) e - x e||, ||e x e - x e|| over the
  /// algebra generated by Ran P.
  double identity_residual = 0.0;
  bool identities_hold = false;
};

struct SupportOptions {
  int max_failures = 32;
  int dykstra_iterations = 300;
};

/// Support projection of a unital projection on a selfadjoint unital algebra:
/// 1 minus the supremum of supports of positive kernel elements.
SupportReport support_e(const OpMap& p, const Tolerances& tol = {},
                        const SupportOptions& opts = {});

/// `extension` supplies e (see ClassifyOptions::extension).
Section5Report section5_suite(const OpMap& p, const Tolerances& tol = {},
                              const OpMap* extension = nullptr);

struct MorphismReport {
  double hom_residual = 0.0;
  double jordan_residual = 0.0;
  std::vector<double> power_residuals;  // index n - 2 for n = 2..nmax
  bool bijective = false;
  /// Lower bounds for T and T^{-1} per level.
  std::vector<std::pair<double, double>> isometric_levels;
  bool real_positive = false;
};

struct MorphismOptions {
  std::size_t levels = 2;
  NormSearchOptions search = search_with_restarts(8);
  int power_samples = 8;
};

MorphismReport morphism_check(const OpMap& t, int nmax, const Tolerances& tol = {},
                              const MorphismOptions& opts = {});

/// Inverse of an injective map, defined on its range.
OpMap inverse_map(const OpMap& t, const Tolerances& tol = {});

}  // namespace opalg
