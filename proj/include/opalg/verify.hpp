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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opalg/certificate.hpp"
#include "opalg/gallery.hpp"
#include "opalg/projlab.hpp"

namespace opalg {

using FieldMap = std::map<std::string, FieldValue>;

struct CertificateStatus {
  std::string target;
  CertificateCheck check;
};

struct Evaluation {
  FieldMap fields;
  std::optional<ProjectionReport> projection;
  std::optional<MorphismReport> morphism;
  std::optional<SymmetricDecomposition> symmetric;
  std::vector<CertificateStatus> certificates;
};

/// Runs the pipeline selected by the bundle settings and flattens the
/// results into named fields.
Evaluation evaluate_bundle(const ExampleBundle& b, const Tolerances& tol = {});

enum class Outcome { pass, fail, skipped };
std::string outcome_name(Outcome o);

struct AssertionResult {
  Expectation expectation;
  Outcome outcome = Outcome::fail;
  std::optional<FieldValue> actual;
  std::string note;
};

/// False with a reason in `note` when the field type does not fit the
/// comparator.
bool compare_field(const FieldValue& actual, const Expectation& e, std::string* note = nullptr);

struct VerifyResult {
  std::string name;
  bool experimental = false;
  std::vector<AssertionResult> results;
  Evaluation evaluation;
  double seconds = 0.0;

  std::size_t count(Outcome o) const;
  bool ok() const { return count(Outcome::fail) == 0; }
};

/// Every certificate contributes an assertion that it validates.
VerifyResult verify_bundle(const ExampleBundle& b, const Tolerances& tol = {});

/// Numbers with `digits` significant digits; matrices row by row.
std::string format_value(const FieldValue& v, int digits = 9);
/// "PASS field op value [provenance: source] (actual ...)".
std::string format_result(const AssertionResult& r);

}  // namespace opalg
