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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "opalg/gallery.hpp"
#include "opalg/linalg.hpp"
#include "opalg/projlab.hpp"
#include "opalg/verify.hpp"
#include "test_util.hpp"

using namespace opalg;
using opalg::testing::E;

namespace {

const OpMap* target_map(const ExampleBundle& b, const std::string& tag, std::vector<OpMap>& keep) {
  if (tag == "P" || tag == "theta") return &b.map;
  if (tag == "I-P") return &keep.emplace_back(complement_map(b.map));
  if (tag == "2P-I") return &keep.emplace_back(reflection_map(b.map));
  for (const auto& a : b.aux)
    if (a.tag == tag) return &a.map;
  return nullptr;
}

// Bundles whose full pipeline runs in well under a second.
const std::set<std::string> kQuick = {"five_by_five_mod23", "ptilde_m3m2",  "transpose_avg_m2",
                                      "tri2_corner",        "tri2_bicontractive_counterexample",
                                      "parity_d2",          "ad_symmetry_m2", "paulsen_U",
                                      "paulsen_U0",         "theta_v"};

}  // namespace

TEST_CASE("registry") {
  const auto infos = list_examples();
  std::vector<std::string> names;
  for (const auto& i : infos) names.push_back(i.name);
  for (const char* n : {"five_by_five", "ptilde_m3m2", "gco_A", "gco_B", "joup", "paulsen_U", "paulsen_U0",
                        "theta_v", "transpose_avg_m2", "tri2_corner", "tri2_bicontractive_counterexample",
                        "parity_d2", "ad_symmetry_m2", "five_by_five_mod23", "five_by_five_mod32"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  for (const auto& i : infos) {
    const bool variant = i.name == "five_by_five_mod23" || i.name == "five_by_five_mod32";
    CHECK(i.experimental == variant);
    CHECK_FALSE(i.description.empty());
  }
  CHECK(list_examples().front().name == infos.front().name);
  CHECK_THROWS_AS(build_example("no_such_example"), Error);
}

TEST_CASE("five_by_five") {
  const ExampleBundle b = build_example("five_by_five");
  CHECK(b.space.dim() == 3);
  CHECK(b.space.ambient_dim() == 5);
  CHECK(b.map.apply(E(5, 1, 3)).max_abs() == 0.0);
  // The compression of the 7-block algebra and its inverse compose to the identity.
  const OpMap* iso = nullptr;
  const OpMap* inv = nullptr;
  for (const auto& a : b.aux) {
    if (a.tag == "iso") iso = &a.map;
    if (a.tag == "inv") inv = &a.map;
  }
  REQUIRE(iso);
  REQUIRE(inv);
  for (const auto& x : b.space.basis()) CHECK(approx_equal(iso->apply(inv->apply(x)), x, 1e-12));
  for (const auto& x : iso->domain().basis()) CHECK(approx_equal(inv->apply(iso->apply(x)), x, 1e-12));
}

TEST_CASE("gco builders") {
  SUBCASE("default A(V)") {
    const ExampleBundle b = build_example("gco_A");
    CHECK(b.space.ambient_dim() == 14);
    CHECK(range_kernel_structure(b.map).kernel_dim == 1);
    // Lower copy of V carries coefficient 2.
    const CMat& v = b.space.basis()[1];
    CHECK(approx_equal(v.block(6, 10, 2, 2), 2.0 * v.block(0, 2, 2, 2), 0.0));
    CHECK(approx_equal(v.block(8, 12, 2, 2), 2.0 * v.block(2, 4, 2, 2), 0.0));
    const CMat& c = b.space.basis().back();
    CHECK((c * c).max_abs() == 0.0);
  }
  SUBCASE("B") {
    const ExampleBundle b = build_example("gco_B");
    CHECK(b.space.ambient_dim() == 6);
    CHECK(range_kernel_structure(b.map).ideal_dim == 1);
  }
  SUBCASE("V with zero products is rejected") {
    // z ⊕ z with z in span{E12}: z w = 0, so C = 0.
    const VSpec v = {{E(2, 1, 2), E(2, 1, 2)}};
    CHECK_THROWS_WITH_AS(build_gco_A(v), doctest::Contains("invalid parameterization"), Error);
    CHECK_THROWS_AS(build_gco_B(v), Error);
  }
  SUBCASE("size mismatch is rejected") {
    CHECK_THROWS_AS(build_gco_B({{E(2, 1, 2), E(3, 2, 1)}}), Error);
    CHECK_THROWS_AS(build_gco_B({}), Error);
  }
}

TEST_CASE("joup generators") {
  const CMat x = E(4, 1, 4) - E(4, 2, 3);
  const CMat y = E(4, 2, 1) + E(4, 3, 4);
  CHECK((x * y + y * x).max_abs() == 0.0);
  CHECK(approx_equal(x * y, -1.0 * E(4, 2, 4), 0.0));
  const ExampleBundle b = build_example("joup");
  CHECK(b.space.ambient_dim() == 28);
  for (const auto& p : b.probes) CHECK(std::get<double>(p.compute()) == 0.0);
  CHECK(range_kernel_structure(b.map).kernel_dim == 1);
}

TEST_CASE("every certificate validates against its target") {
  for (const auto& info : list_examples()) {
    const ExampleBundle b = build_example(info.name);
    std::vector<OpMap> keep;
    keep.reserve(b.certificates.size());
    for (const auto& c : b.certificates) {
      CAPTURE(info.name);
      CAPTURE(c.target);
      const OpMap* t = target_map(b, c.target, keep);
      REQUIRE(t != nullptr);
      const CertificateCheck chk = check_certificate(c.certificate, *t);
      CHECK_MESSAGE(chk.valid, chk.failure);
      CHECK(chk.certified_upper <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("builders are deterministic") {
  for (const auto& info : list_examples()) {
    const ExampleBundle a = build_example(info.name);
    const ExampleBundle b = build_example(info.name);
    REQUIRE(a.space.dim() == b.space.dim());
    for (std::size_t i = 0; i < a.map.images().size(); ++i) CHECK(approx_equal(a.map.images()[i], b.map.images()[i], 0.0));
    CHECK(a.expected.size() == b.expected.size());
  }
}

TEST_CASE("quick bundles verify and compute every named field") {
  for (const auto& name : kQuick) {
    CAPTURE(name);
    const VerifyResult r = verify_bundle(build_example(name));
    for (const auto& a : r.results) {
      CAPTURE(a.expectation.field);
      CHECK(a.note != "field not computed");
      if (!a.expectation.experimental) CHECK(a.outcome == Outcome::pass);
    }
  }
}

TEST_CASE("verify reports failures") {
  ExampleBundle b = build_example("tri2_corner");
  Expectation wrong;
  wrong.field = "range.is_subalgebra";
  wrong.op = "==";
  wrong.value = false;
  b.expected.push_back(wrong);
  Expectation missing;
  missing.field = "no.such.field";
  missing.op = "==";
  missing.value = true;
  b.expected.push_back(missing);
  // A certificate for the wrong map is a failure, not a skip.
  b.certificates.push_back({"I-P", cert_inclusion()});
  const VerifyResult r = verify_bundle(b);
  CHECK(r.count(Outcome::fail) == 3);
  CHECK_FALSE(r.ok());
}

TEST_CASE("compare_field") {
  Expectation e;
  e.op = "~";
  e.value = 1.0;
  e.tolerance = 1e-3;
  CHECK(compare_field(1.0005, e));
  CHECK_FALSE(compare_field(1.01, e));
  std::string note;
  CHECK_FALSE(compare_field(true, e, &note));
  CHECK(note == "type mismatch");
  e.value = CMat::identity(2);
  CHECK(compare_field(CMat::identity(2), e));
  CHECK_FALSE(compare_field(CMat::identity(3), e, &note));
  e.op = "<";
  CHECK_FALSE(compare_field(CMat::identity(2), e, &note));
}

TEST_CASE("format_value uses 9 significant digits") {
  CHECK(format_value(1.0 / 3.0) == "0.333333333");
  CHECK(format_value(true) == "true");
  CHECK(format_value(CMat::diag({cplx{1, 0}, cplx{0, -2}})) == "[1, 0; 0, -2i]");
}
