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

#include "json.hpp"
#include "opalg/cbmaps.hpp"
#include "opalg/certificate.hpp"
#include "opalg/cmat.hpp"
#include "opalg/gallery.hpp"
#include "opalg/opspace.hpp"
#include "opalg/projlab.hpp"
#include "opalg/verify.hpp"

namespace opalg {

using Json = nlohmann::ordered_json;

// Readers throw Error on schema violations.

/// {"rows", "cols", "entries": [[re, im], ...]} row-major.
Json to_json(const CMat& m);
CMat cmat_from_json(const Json& j);

/// {"name", "ambient_dim", "basis"}; the onb is recomputed on load.
Json to_json(const OpSpace& s);
OpSpace space_from_json(const Json& j, const Tolerances& tol = {});

/// {"name", "domain", "codomain_dim", "images"}; images of the domain basis.
Json to_json(const OpMap& f);
OpMap map_from_json(const Json& j, const Tolerances& tol = {});

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const Tolerances& t);
Json to_json(const NormReport& r);
Json to_json(const SkipRecord& r);
Json to_json(const MacReport& r);
Json to_json(const Section5Report& r);
Json to_json(const RangeKernelReport& r);
Json to_json(const ProjectionReport& r);
Json to_json(const SymmetricDecomposition& r);
Json to_json(const MorphismReport& r);

Json to_json(const FieldValue& v);
FieldValue field_from_json(const Json& j);
Json to_json(const Expectation& e);
Expectation expectation_from_json(const Json& j);

/// Space, map, certificates, auxiliary maps, probe names, expectations and
/// run settings.
Json to_json(const ExampleBundle& b);
Json to_json(const AssertionResult& r);
Json to_json(const VerifyResult& r);

}  // namespace opalg
