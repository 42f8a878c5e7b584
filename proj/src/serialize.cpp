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

#include "opalg/serialize.hpp"

namespace opalg {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(std::string(what) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw Error(std::string(what) + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_string()) throw Error(std::string(what) + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<CMat> cmat_list(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_array()) throw Error(std::string(what) + ": '" + key + "' must be an array");
  std::vector<CMat> out;
  for (const auto& m : v) out.push_back(cmat_from_json(m));
  return out;
}

Json index_list(const std::vector<std::size_t>& v) { return Json(v); }

std::vector<std::size_t> index_list_from(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::size_t>>();
}

Json levels_json(const std::vector<NormReport>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(to_json(r));
  return a;
}

Json cert_bound_json(const std::optional<CertifiedBound>& c) {
  if (!c) return nullptr;
  Json j;
  j["valid"] = c->valid;
  j["certified_upper"] = c->upper;
  if (!c->failure.empty()) j["failure"] = c->failure;
  return j;
}

Json flags_json(const StructureFlags& f) {
  Json j;
  j["is_subalgebra"] = f.is_subalgebra;
  j["is_jordan_subalgebra"] = f.is_jordan_subalgebra;
  j["is_unital"] = f.is_unital;
  j["is_selfadjoint"] = f.is_selfadjoint;
  j["square_zero"] = f.square_zero;
  return j;
}

}  // namespace

Json to_json(const CMat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json e = Json::array();
  for (const cplx& z : m.data()) e.push_back(Json::array({z.real(), z.imag()}));
  j["entries"] = std::move(e);
  return j;
}

CMat cmat_from_json(const Json& j) {
  const char* what = "matrix";
  const std::size_t r = size_field(j, "rows", what);
  const std::size_t c = size_field(j, "cols", what);
  const Json& e = field(j, "entries", what);
  if (!e.is_array() || e.size() != r * c) throw Error("matrix: expected rows*cols entries");
  std::vector<cplx> data;
  data.reserve(e.size());
  for (const auto& z : e) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw Error("matrix: each entry must be [re, im]");
    }
    data.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return CMat(r, c, std::move(data));
}

Json to_json(const OpSpace& s) {
  Json j;
  j["name"] = s.name();
  j["ambient_dim"] = s.ambient_dim();
  Json b = Json::array();
  for (const auto& x : s.basis()) b.push_back(to_json(x));
  j["basis"] = std::move(b);
  return j;
}

OpSpace space_from_json(const Json& j, const Tolerances& tol) {
  const char* what = "space";
  return make_space(size_field(j, "ambient_dim", what), cmat_list(j, "basis", what),
                    string_field(j, "name", what), tol);
}

Json to_json(const OpMap& f) {
  Json j;
  j["name"] = f.name();
  j["domain"] = to_json(f.domain());
  j["codomain_dim"] = f.codomain_dim();
  Json im = Json::array();
  for (const auto& x : f.images()) im.push_back(to_json(x));
  j["images"] = std::move(im);
  return j;
}

OpMap map_from_json(const Json& j, const Tolerances& tol) {
  const char* what = "map";
  return make_map(space_from_json(field(j, "domain", what), tol), size_field(j, "codomain_dim", what),
                  cmat_list(j, "images", what), string_field(j, "name", what));
}

Json to_json(const Certificate& c) {
  using K = Certificate::Kind;
  Json j;
  j["kind"] = kind_name(c.kind);
  if (!c.label.empty()) j["label"] = c.label;
  switch (c.kind) {
    case K::compose:
    case K::direct_sum:
      break;
    case K::tensor_id:
      j["k"] = c.k;
      break;
    case K::conjugation:
      j["a"] = to_json(c.a);
      j["b"] = to_json(c.b);
      break;
    case K::placement: {
      j["in_rows"] = index_list(c.in_rows);
      j["in_cols"] = index_list(c.in_cols);
      j["out_rows"] = index_list(c.out_rows);
      j["out_cols"] = index_list(c.out_cols);
      Json items = Json::array();
      for (const auto& it : c.items) items.push_back({it.src_row, it.src_col, it.dst_row, it.dst_col});
      j["items"] = std::move(items);
      break;
    }
    case K::paulsen:
      j["n_in"] = c.n_in;
      j["n_out"] = c.n_out;
      break;
    case K::inclusion:
      break;
    case K::cp:
      j["n_in"] = c.n_in;
      j["n_out"] = c.n_out;
      j["choi"] = to_json(c.choi);
      break;
  }
  if (!c.children.empty()) {
    Json ch = Json::array();
    for (const auto& x : c.children) ch.push_back(to_json(x));
    j["children"] = std::move(ch);
  }
  return j;
}

Certificate certificate_from_json(const Json& j) {
  using K = Certificate::Kind;
  const char* what = "certificate";
  Certificate c;
  c.kind = kind_from_name(string_field(j, "kind", what));
  if (j.contains("label")) c.label = string_field(j, "label", what);
  if (j.contains("children")) {
    for (const auto& x : j.at("children")) c.children.push_back(certificate_from_json(x));
  }
  try {
    switch (c.kind) {
      case K::compose:
      case K::direct_sum:
      case K::inclusion:
        break;
      case K::tensor_id:
        c.k = size_field(j, "k", what);
        break;
      case K::conjugation:
        c.a = cmat_from_json(field(j, "a", what));
        c.b = cmat_from_json(field(j, "b", what));
        break;
      case K::placement:
        c.in_rows = index_list_from(j, "in_rows");
        c.in_cols = index_list_from(j, "in_cols");
        c.out_rows = index_list_from(j, "out_rows");
        c.out_cols = index_list_from(j, "out_cols");
        for (const auto& it : field(j, "items", what)) {
          const auto v = it.get<std::vector<std::size_t>>();
          if (v.size() != 4) throw Error("certificate: placement item needs 4 indices");
          c.items.push_back({v[0], v[1], v[2], v[3]});
        }
        break;
      case K::paulsen:
        c.n_in = size_field(j, "n_in", what);
        c.n_out = size_field(j, "n_out", what);
        break;
      case K::cp:
        c.n_in = size_field(j, "n_in", what);
        c.n_out = size_field(j, "n_out", what);
        c.choi = cmat_from_json(field(j, "choi", what));
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("certificate: ") + e.what());
  }
  return c;
}

Json to_json(const Tolerances& t) {
  Json j;
  j["eps_eq"] = t.eps_eq;
  j["eps_psd"] = t.eps_psd;
  j["eps_norm"] = t.eps_norm;
  j["max_iter"] = t.max_iter;
  j["seed"] = t.seed;
  return j;
}

Json to_json(const NormReport& r) {
  Json j;
  j["level"] = r.level;
  j["lower_bound"] = r.lower_bound;
  j["certified_upper"] = r.certified_upper ? Json(*r.certified_upper) : Json(nullptr);
  j["restarts_used"] = r.restarts_used;
  j["converged"] = r.converged;
  j["witness"] = to_json(r.witness);
  return j;
}

Json to_json(const SkipRecord& r) {
  Json j;
  j["status"] = "SKIPPED";
  j["check"] = r.check;
  j["hypothesis"] = r.hypothesis;
  j["witness"] = r.witness.empty() ? Json(nullptr) : to_json(r.witness);
  return j;
}

Json to_json(const MacReport& r) {
  Json j;
  j["p1"] = to_json(r.p1);
  j["p2"] = to_json(r.p2);
  j["p"] = to_json(r.p);
  j["left_condition"] = r.left_condition;
  j["right_condition"] = r.right_condition;
  j["kernel_dim"] = r.kernel_dim;
  return j;
}

Json to_json(const Section5Report& r) {
  Json j;
  j["e"] = r.e.empty() ? Json(nullptr) : to_json(r.e);
  j["re_complement_ratio"] = r.re_complement_ratio;
  j["re_hypothesis"] = r.re_hypothesis;
  j["m1_residual"] = r.m1_residual;
  j["m2_residual"] = r.m2_residual;
  j["m3"] = {{"re_norm", r.m3.re_norm}, {"u_sq_norm", r.m3.u_sq_norm}, {"orth_residual", r.m3.orth_residual}};
  j["matre_nilpotent"] = r.matre_nilpotent;
  Json sb = Json::array();
  for (const auto& s : r.slow_bounds) sb.push_back({{"n", s.n}, {"value", s.value}, {"bound", s.bound}});
  j["slow_bounds"] = std::move(sb);
  j["quasi_regular"] = r.quasi_regular;
  Json el = Json::array();
  for (const auto& e : r.elements) {
    Json x;
    x["x"] = to_json(e.x);
    x["m1_residual"] = e.m1_residual;
    x["m2_residual"] = e.m2_residual;
    x["m3"] = {{"re_norm", e.m3.re_norm}, {"u_sq_norm", e.m3.u_sq_norm}, {"orth_residual", e.m3.orth_residual}};
    x["nilpotent"] = e.nilpotent;
    x["nilpotency_index"] = e.nilpotency_index;
    x["quasi_regular"] = e.quasi_regular;
    x["corner_residual"] = e.corner_residual;
    el.push_back(std::move(x));
  }
  j["elements"] = std::move(el);
  return j;
}

Json to_json(const RangeKernelReport& r) {
  Json j;
  j["C2_in_B"] = r.C2_in_B;
  j["BmodC"] = r.BmodC;
  j["C3_in_B"] = r.C3_in_B;
  j["kernel_is_subalgebra"] = r.kernel_is_subalgebra;
  j["squarezero"] = r.squarezero;
  j["ideal_in_D"] = r.ideal_in_D;
  j["kernel_dim"] = r.kernel_dim;
  j["ideal_dim"] = r.ideal_dim;
  j["condexp_residual"] = r.condexp_residual;
  j["choi_effros_assoc"] = r.choi_effros_assoc;
  return j;
}

Json to_json(const ProjectionReport& r) {
  Json j;
  j["name"] = r.name;
  j["idempotent_residual"] = r.idempotent_residual;
  j["unital"] = r.unital;
  j["P"] = {{"levels", levels_json(r.p_levels)}, {"certificate", cert_bound_json(r.p_cert)}};
  j["I-P"] = {{"levels", levels_json(r.complement_levels)}, {"certificate", cert_bound_json(r.complement_cert)}};
  j["2P-I"] = {{"levels", levels_json(r.reflection_levels)}, {"certificate", cert_bound_json(r.reflection_cert)}};
  j["hermitian_sup"] = r.hermitian_sup;
  j["hermitian_argmax"] = r.hermitian_argmax;
  j["q"] = r.q.empty() ? Json(nullptr) : to_json(r.q);
  j["q_is_projection"] = r.q_is_projection;
  j["split_residual"] = r.split_residual ? Json(*r.split_residual) : Json(nullptr);
  j["corner_residual"] = r.corner_residual ? Json(*r.corner_residual) : Json(nullptr);
  j["range_flags"] = flags_json(r.range_flags);
  j["range_dim"] = r.range_dim;
  j["range_kernel"] = to_json(r.rk);
  j["reduced"] = r.reduced;
  j["mac"] = r.mac ? to_json(*r.mac) : Json(nullptr);
  j["section5"] = r.section5 ? to_json(*r.section5) : Json(nullptr);
  const Verdicts& v = r.verdicts;
  j["verdicts"] = {{"contractive", v.contractive},
                   {"bicontractive", v.bicontractive},
                   {"symmetric", v.symmetric},
                   {"hermitian", v.hermitian},
                   {"contractive_certified", v.contractive_certified},
                   {"bicontractive_certified", v.bicontractive_certified},
                   {"symmetric_certified", v.symmetric_certified}};
  Json sk = Json::array();
  for (const auto& s : r.skipped) sk.push_back(to_json(s));
  j["skipped"] = std::move(sk);
  return j;
}

Json to_json(const SymmetricDecomposition& r) {
  Json j;
  j["ok"] = r.ok;
  j["q"] = r.q.empty() ? Json(nullptr) : to_json(r.q);
  j["involution_residual"] = r.involution_residual;
  j["hom_residual"] = r.hom_residual;
  j["fixed_q_residual"] = r.fixed_q_residual;
  j["formula_residual"] = r.formula_residual;
  j["reflection_lower"] = r.reflection_lower;
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["witness"] = r.witness.empty() ? Json(nullptr) : to_json(r.witness);
  return j;
}

Json to_json(const MorphismReport& r) {
  Json j;
  j["hom_residual"] = r.hom_residual;
  j["jordan_residual"] = r.jordan_residual;
  j["power_residuals"] = r.power_residuals;
  j["bijective"] = r.bijective;
  Json lv = Json::array();
  for (const auto& [a, b] : r.isometric_levels) lv.push_back({{"map", a}, {"inverse", b}});
  j["isometric_levels"] = std::move(lv);
  j["real_positive"] = r.real_positive;
  return j;
}

Json to_json(const FieldValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  if (const double* d = std::get_if<double>(&v)) return *d;
  return to_json(std::get<CMat>(v));
}

FieldValue field_from_json(const Json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return j.get<double>();
  if (j.is_object()) return cmat_from_json(j);
  throw Error("field value must be a boolean, number or matrix");
}

Json to_json(const Expectation& e) {
  Json j;
  j["field"] = e.field;
  j["op"] = e.op;
  j["value"] = to_json(e.value);
  j["tolerance"] = e.tolerance;
  j["provenance"] = provenance_name(e.provenance);
  j["source"] = e.source;
  j["experimental"] = e.experimental;
  return j;
}

Expectation expectation_from_json(const Json& j) {
  const char* what = "expectation";
  Expectation e;
  e.field = string_field(j, "field", what);
  e.op = string_field(j, "op", what);
  e.value = field_from_json(field(j, "value", what));
  if (j.contains("tolerance")) e.tolerance = j.at("tolerance").get<double>();
  e.provenance = provenance_from_name(string_field(j, "provenance", what));
  if (j.contains("source")) e.source = string_field(j, "source", what);
  if (j.contains("experimental")) e.experimental = j.at("experimental").get<bool>();
  return e;
}

Json to_json(const ExampleBundle& b) {
  Json j;
  j["name"] = b.name;
  j["description"] = b.description;
  j["topic"] = b.topic;
  j["experimental"] = b.experimental;
  j["kind"] = b.kind == ExampleBundle::Kind::projection ? "projection" : "morphism";
  j["space"] = to_json(b.space);
  j["map"] = to_json(b.map);
  Json certs = Json::array();
  for (const auto& c : b.certificates) certs.push_back({{"target", c.target}, {"certificate", to_json(c.certificate)}});
  j["certificates"] = std::move(certs);
  Json aux = Json::array();
  for (const auto& a : b.aux) aux.push_back({{"tag", a.tag}, {"map", to_json(a.map)}});
  j["aux"] = std::move(aux);
  Json probes = Json::array();
  for (const auto& p : b.probes) probes.push_back(p.field);
  j["probes"] = std::move(probes);
  Json ex = Json::array();
  for (const auto& e : b.expected) ex.push_back(to_json(e));
  j["expected"] = std::move(ex);
  const RunSettings& s = b.settings;
  j["settings"] = {{"max_level", s.max_level},
                   {"hermitian_level", s.hermitian_level},
                   {"restarts", s.restarts},
                   {"hermitian_restarts", s.hermitian_restarts},
                   {"hermitian_points", s.hermitian_points},
                   {"choi", s.choi},
                   {"support", s.support},
                   {"symmetric", s.symmetric},
                   {"positivity", s.positivity},
                   {"aux_level", s.aux_level}};
  return j;
}

Json to_json(const AssertionResult& r) {
  Json j = to_json(r.expectation);
  j["status"] = outcome_name(r.outcome);
  j["actual"] = r.actual ? to_json(*r.actual) : Json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const VerifyResult& r) {
  Json j;
  j["name"] = r.name;
  j["experimental"] = r.experimental;
  j["pass"] = r.count(Outcome::pass);
  j["fail"] = r.count(Outcome::fail);
  j["skipped"] = r.count(Outcome::skipped);
  Json a = Json::array();
  for (const auto& x : r.results) a.push_back(to_json(x));
  j["assertions"] = std::move(a);
  Json f;
  for (const auto& [k, v] : r.evaluation.fields) f[k] = to_json(v);
  j["fields"] = std::move(f);
  if (r.evaluation.projection) j["projection_report"] = to_json(*r.evaluation.projection);
  if (r.evaluation.symmetric) j["symmetric"] = to_json(*r.evaluation.symmetric);
  if (r.evaluation.morphism) j["morphism_report"] = to_json(*r.evaluation.morphism);
  return j;
}

}  // namespace opalg
