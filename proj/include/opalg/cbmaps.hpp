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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opalg/cmat.hpp"
#include "opalg/opspace.hpp"

namespace opalg {

/// Linear map from an operator space in M_n into M_m, stored as the images
/// of the domain basis.
class OpMap {
 public:
  OpMap() = default;

  const std::string& name() const { return name_; }
  const OpSpace& domain() const { return domain_; }
  std::size_t codomain_dim() const { return m_; }
  const std::vector<CMat>& images() const { return images_; }
  /// Images of domain().onb().
  const std::vector<CMat>& onb_images() const { return onb_images_; }

  /// Throws when x is outside the domain span.
  CMat apply(const CMat& x, const Tolerances& tol = {}) const;
  /// phi ⊗ id_k applied blockwise to a k x k block matrix.
  CMat apply_amplified(const CMat& x, std::size_t k, const Tolerances& tol = {}) const;

  OpMap renamed(std::string name) const;

 private:
  friend OpMap make_map(OpSpace, std::size_t, std::vector<CMat>, std::string);

  std::string name_;
  OpSpace domain_;
  std::size_t m_ = 0;
  std::vector<CMat> images_;
  std::vector<CMat> onb_images_;
};

OpMap make_map(OpSpace domain, std::size_t codomain_dim, std::vector<CMat> images,
               std::string name);

/// Images are f(b) for each domain basis element b.
OpMap map_from_function(OpSpace domain, std::size_t codomain_dim,
                        const std::function<CMat(const CMat&)>& f, std::string name);

OpMap identity_map(const OpSpace& s);
OpMap zero_map(const OpSpace& s, std::size_t codomain_dim);

/// outer ∘ inner. The images of inner must lie in outer's domain.
OpMap compose(const OpMap& outer, const OpMap& inner, const Tolerances& tol = {});

/// a * f + b * g on a common domain.
OpMap linear_combination(cplx a, const OpMap& f, cplx b, const OpMap& g);

/// Same map regarded on another domain containing the same basis span
/// (restriction or re-expression). Evaluates f on the basis of `domain`.
OpMap restrict_map(const OpMap& f, const OpSpace& domain, const Tolerances& tol = {});

/// Range span of the map.
OpSpace range_space(const OpMap& f, const Tolerances& tol = {});

/// Max over onb elements of ||f(f(x)) - f(x)||_max. Requires images in the domain.
double idempotent_residual(const OpMap& f, const Tolerances& tol = {});

struct NormReport {
  std::size_t level = 1;
  double lower_bound = 0.0;
  std::optional<double> certified_upper;
  int restarts_used = 0;
  CMat witness;  // in M_k(domain), ||witness|| = 1
  bool converged = false;
};

struct NormSearchOptions {
  int restarts = 32;
  int steps_per_stage = 60;
  /// Schatten exponents of the continuation schedule.
  std::vector<double> schedule{8.0, 32.0, 128.0, 512.0};
  /// Extra starting points in M_k(domain) (e.g. a lower-level witness ⊕ 0).
  std::vector<CMat> warm_starts;
};

inline NormSearchOptions search_with_restarts(int restarts) {
  NormSearchOptions o;
  o.restarts = restarts;
  return o;
}

/// Heuristic lower bound for ||phi ⊗ id_k||. The value reported is
/// ||(phi ⊗ id_k)(X)|| / ||X|| for an explicit X in M_k(domain), so it never
/// exceeds the true norm beyond rounding.
NormReport norm_lower(const OpMap& phi, std::size_t k, const Tolerances& tol = {},
                      const NormSearchOptions& opts = {});

/// Levels 1..kmax, each seeded with the previous witness padded by zeros.
std::vector<NormReport> norm_lower_levels(const OpMap& phi, std::size_t kmax,
                                          const Tolerances& tol = {},
                                          const NormSearchOptions& opts = {});

/// The level at which a search reaches the cb norm for maps into M_m.
inline std::size_t smith_level(const OpMap& phi) { return phi.codomain_dim(); }

struct ChoiReport {
  CMat choi;
  bool is_cp = false;
  bool is_contractive_cp = false;
};

/// Requires the domain to be all of M_n.
ChoiReport choi_cp_check(const OpMap& phi, const Tolerances& tol = {});

/// Extends phi to all of M_n by phi ∘ e, where e is the HS-orthogonal
/// projection onto the domain.
OpMap extend_by_projection(const OpMap& phi, const Tolerances& tol = {});

/// phi^1 on unitize(domain): phi^1(x + c 1) = phi(x) + c 1. Throws when the
/// domain is already unital and phi(1) != 1.
OpMap unital_extension(const OpMap& phi, const Tolerances& tol = {});

struct Certificate;

struct RcpOptions {
  int samples = 256;
  std::size_t max_sample_level = 3;
  /// Cap on the level of the norm search in the unital route.
  std::size_t max_norm_level = 5;
  NormSearchOptions search{};
};

struct RcpReport {
  bool unital_route = false;
  bool sampled_accretive = false;
  double unital_lower = 0.0;
  bool certificate_valid = false;
  std::string note;
};

/// Two proxies for real complete positivity. unital_route needs a certificate
/// for the unital extension; without one it is false and `note` says why.
RcpReport rcp_check(const OpMap& phi, const Tolerances& tol = {},
                    const Certificate* unital_certificate = nullptr,
                    const RcpOptions& opts = {});

/// Accretive samples in M_k(S) for k = 1..max_level (round robin).
std::vector<std::pair<std::size_t, CMat>> sample_accretive(const OpSpace& s, int count,
                                                           std::size_t max_level,
                                                           const Tolerances& tol = {});

}  // namespace opalg
