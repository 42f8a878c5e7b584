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

#include "doctest.h"
#include "properties.hpp"

using namespace opalg;
namespace props = opalg::properties;

namespace {

void check(const props::Outcome& o) {
  INFO(o.name << ": " << o.detail);
  CHECK(o.ok);
  CHECK(o.instances == props::kInstances);
  MESSAGE(o.name << " (" << o.instances << " instances, " << o.seconds << " s): " << o.detail);
}

const std::vector<props::detail::GalleryProjection>& gallery() {
  static const auto g = props::detail::gallery_projections();
  return g;
}

}  // namespace

TEST_CASE("norm_lower is monotone in the level") { check(props::monotone_levels()); }

TEST_CASE("certified bounds are never exceeded") { check(props::certificate_soundness()); }

TEST_CASE("contractive CP maps are completely contractive") { check(props::contractive_cp()); }

TEST_CASE("conditional expectation identities") { check(props::condexp_identities(gallery())); }

TEST_CASE("kernel products lie in the range") { check(props::kernel_products_in_range(gallery())); }

TEST_CASE("subalgebra range iff reflection is multiplicative") { check(props::reflection_dichotomy(gallery())); }

TEST_CASE("gallery qualification") {
  // Every suite that runs on gallery projections sees at least two of them.
  int certified = 0, bicontractive = 0;
  for (const auto& g : gallery()) {
    certified += g.p_certified;
    bicontractive += g.unital && g.p_certified && g.complement_certified;
  }
  CHECK(certified >= 2);
  CHECK(bicontractive >= 2);
}
