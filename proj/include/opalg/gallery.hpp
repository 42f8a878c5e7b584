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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "opalg/cbmaps.hpp"
#include "opalg/certificate.hpp"
#include "opalg/cmat.hpp"
#include "opalg/opspace.hpp"

namespace opalg {

using FieldValue = std::variant<bool, double, CMat>;

/// Where an expected value comes from: stated in the source text, computed
/// by hand from the construction, or immediate.
enum class Provenance { published, derived, elementary };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

/// One named assertion on a field of the verification pipeline.
struct Expectation {
  std::string field;
  /// "==", "!=", "<", "<=", ">", ">=", or "~" (|actual - value| <= tolerance,
  /// entrywise for matrices).
  std::string op;
  FieldValue value;
  double tolerance = 0.0;
  Provenance provenance = Provenance::derived;
  std::string source;
  /// Recorded but not asserted; reported as SKIPPED.
  bool experimental = false;
};

struct TaggedCertificate {
  /// "P", "I-P", "2P-I", "theta", or the tag of an auxiliary map.
  std::string target;
  Certificate certificate;
};

struct AuxMap {
  std::string tag;
  OpMap map;
};

/// A scalar or matrix computed directly from the construction.
struct Probe {
  std::string field;
  std::function<FieldValue()> compute;
};

struct RunSettings {
  std::size_t max_level = 2;
  std::size_t hermitian_level = 1;
  int restarts = 32;
  int hermitian_restarts = 8;
  int hermitian_points = 16;
  bool choi = false;
  bool support = false;
  bool symmetric = false;
  bool positivity = false;
  /// Level of the norm search on auxiliary maps and morphisms.
  std::size_t aux_level = 1;
};

struct ExampleBundle {
  enum class Kind { projection, morphism };

  std::string name;
  std::string description;
  std::string topic;
  bool experimental = false;
  Kind kind = Kind::projection;
  OpSpace space;
  OpMap map;
  std::vector<TaggedCertificate> certificates;
  std::vector<AuxMap> aux;
  std::vector<Probe> probes;
  std::vector<Expectation> expected;
  RunSettings settings;
};

struct ExampleInfo {
  std::string name;
  std::string description;
  std::string topic;
  bool experimental = false;
};

/// Registry in a fixed order.
std::vector<ExampleInfo> list_examples();

/// Throws Error for an unknown name.
ExampleBundle build_example(const std::string& name);

/// Elements of V as pairs (v1, v2) of n x n matrices.
using VSpec = std::vector<std::pair<CMat, CMat>>;

/// The 3-block algebra B = {[[l, v1, c], [0, l, v2], [0, 0, l]]} with the
/// projection removing c. Throws when C = span{v1 w2} is zero.
ExampleBundle build_gco_B(const VSpec& v, const std::string& name = "gco_B");

/// The 7-block algebra A(V) with the projection removing the (1, 3) block.
ExampleBundle build_gco_A(const VSpec& v, const std::string& name = "gco_A");

/// The 5 x 5 algebra {l I + nu (E12 + E23 + 2 E45) + c E13}.
OpSpace five_by_five_space();
/// x -> P(x) zeroing the (1, 3) entry.
OpMap five_by_five_projection();
/// The completely contractive completely positive extension to M3 ⊕ M2.
OpMap ptilde_projection();

/// Certificates used by the gallery.
Certificate five_by_five_certificate();
Certificate gco_A_certificate(std::size_t n);
/// Compression x -> a x b onto the (i, j) block of a k-block matrix with
/// blocks of size n.
Certificate block_corner_certificate(std::size_t k, std::size_t n, std::size_t i, std::size_t j);

}  // namespace opalg
