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

#include <random>

#include "doctest.h"
#include "opalg/gallery.hpp"
#include "opalg/serialize.hpp"
#include "test_util.hpp"

using namespace opalg;
using opalg::testing::E;

TEST_CASE("matrix wire format") {
  const CMat m{{cplx{1, 2}, 3.0}, {0.0, cplx{0, -0.1}}};
  const Json j = to_json(m);
  CHECK(j.at("rows") == 2);
  CHECK(j.at("cols") == 2);
  CHECK(j.at("entries")[1] == Json::array({3.0, 0.0}));
  CHECK(j.at("entries")[3] == Json::array({0.0, -0.1}));
  // Doubles round-trip exactly through text.
  std::mt19937_64 rng(5);
  const CMat r = testing::random_cmat(rng, 3, 4);
  CHECK(approx_equal(cmat_from_json(Json::parse(to_json(r).dump())), r, 0.0));
}

TEST_CASE("matrix schema errors") {
  CHECK_THROWS_AS(cmat_from_json(Json::parse(R"({"rows": 1})")), Error);
  CHECK_THROWS_AS(cmat_from_json(Json::parse(R"({"rows": 1, "cols": 1, "entries": [[1]]})")), Error);
  CHECK_THROWS_AS(cmat_from_json(Json::parse(R"({"rows": 1, "cols": 2, "entries": [[1, 0]]})")), Error);
  CHECK_THROWS_AS(cmat_from_json(Json::parse(R"({"rows": -1, "cols": 0, "entries": []})")), Error);
}

TEST_CASE("space and map round trip") {
  const OpMap p = five_by_five_projection();
  const OpMap q = map_from_json(Json::parse(to_json(p).dump()));
  CHECK(q.name() == p.name());
  CHECK(q.domain().dim() == 3);
  const CMat x = 2.0 * CMat::identity(5) + E(5, 1, 3);
  CHECK(approx_equal(q.apply(x), p.apply(x), 0.0));
  const Json sj = to_json(p.domain());
  CHECK_FALSE(sj.contains("onb"));
  CHECK(space_from_json(sj).dim() == 3);
  Json bad = sj;
  bad["basis"].push_back(to_json(CMat::identity(5)));
  CHECK_THROWS_AS(space_from_json(bad), Error);  // dependent basis
}

TEST_CASE("certificate round trip") {
  const Certificate c = five_by_five_certificate();
  const Certificate d = certificate_from_json(Json::parse(to_json(c).dump()));
  const OpMap p = five_by_five_projection();
  for (const auto& x : p.domain().basis()) CHECK(approx_equal(evaluate(d, x), evaluate(c, x), 0.0));
  CHECK(check_certificate(d, p).valid);
  const Certificate cp = cert_cp(2, 2, 0.5 * CMat::identity(4), "state");
  CHECK(to_json(certificate_from_json(to_json(cp))) == to_json(cp));
  const Certificate pl = cert_placement({1, 1}, {1, 1}, {1, 1}, {1, 1}, {{0, 1, 1, 0}});
  CHECK(to_json(certificate_from_json(to_json(pl))) == to_json(pl));
  CHECK_THROWS_AS(certificate_from_json(Json::parse(R"({"kind": "mystery"})")), Error);
  CHECK_THROWS_AS(certificate_from_json(Json::parse(R"({"kind": "conjugation"})")), Error);
}

TEST_CASE("expectations keep their provenance") {
  const ExampleBundle b = build_example("tri2_corner");
  const Json j = to_json(b);
  REQUIRE(j.at("expected").size() == b.expected.size());
  for (std::size_t i = 0; i < b.expected.size(); ++i) {
    const Expectation e = expectation_from_json(j.at("expected")[i]);
    CHECK(e.provenance == b.expected[i].provenance);
    CHECK(e.field == b.expected[i].field);
    CHECK(e.source == b.expected[i].source);
  }
  CHECK(j.at("expected")[0].at("provenance").is_string());
  CHECK_THROWS_AS(provenance_from_name("folklore"), Error);
}

TEST_CASE("skip records carry hypothesis and witness") {
  const SkipRecord s{"mac", "P(1) is a projection", CMat::identity(2)};
  const Json j = to_json(s);
  CHECK(j.at("status") == "SKIPPED");
  CHECK(j.at("hypothesis") == "P(1) is a projection");
  CHECK(cmat_from_json(j.at("witness")).rows() == 2);
}
