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

#include "opalg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "opalg/linalg.hpp"
#include "opalg/random.hpp"

namespace opalg {

namespace {

const Certificate* find_certificate(const ExampleBundle& b, const std::string& target) {
  for (const auto& c : b.certificates)
    if (c.target == target) return &c.certificate;
  return nullptr;
}

bool is_full_algebra(const OpSpace& s) {
  return s.dim() == s.ambient_dim() * s.ambient_dim();
}

double max_level_lower(const std::vector<NormReport>& levels) {
  double v = 0.0;
  for (const auto& r : levels) v = std::max(v, r.lower_bound);
  return v;
}

void put_levels(FieldMap& f, const std::string& tag, const std::vector<NormReport>& levels,
                const std::optional<CertifiedBound>& cert) {
  f[tag + ".lower"] = max_level_lower(levels);
  for (const auto& r : levels) f[tag + ".lower.level" + std::to_string(r.level)] = r.lower_bound;
  if (cert) {
    f["cert." + tag + ".valid"] = cert->valid;
    if (cert->valid) f[tag + ".certified_upper"] = cert->upper;
  }
}

// max ||theta(xy) - theta(x) theta(y)|| over onb pairs.
double hom_residual(const OpMap& t, const Tolerances& tol) {
  double r = 0.0;
  const auto& onb = t.domain().onb();
  const auto& img = t.onb_images();
  for (std::size_t i = 0; i < onb.size(); ++i)
    for (std::size_t j = 0; j < onb.size(); ++j) {
      const CMat xy = onb[i] * onb[j];
      if (!t.domain().contains(xy, tol)) return INFINITY;
      r = std::max(r, op_norm(t.apply(xy, tol) - img[i] * img[j]));
    }
  return r;
}

// P(gg^*) >= -eps over seeded Gaussian g; level-one inputs of a full algebra.
bool sampled_positive(const OpMap& p, const Tolerances& tol, int samples) {
  const std::size_t n = p.domain().ambient_dim();
  Rng rng(derive_seed(tol.seed, 0x9051));
  for (int s = 0; s < samples; ++s) {
    const CMat g = gaussian_cmat(rng, n, n);
    const CMat x = g * g.adjoint();
    const CMat y = p.apply(x, tol);
    if (min_eigenvalue(0.5 * (y + y.adjoint())) < -tol.eps_psd * std::max(1.0, op_norm(x))) return false;
  }
  return true;
}

void evaluate_projection(const ExampleBundle& b, const Tolerances& tol, Evaluation& ev) {
  const RunSettings& st = b.settings;
  FieldMap& f = ev.fields;
  const OpMap& p = b.map;

  ProjectionCertificates certs;
  if (auto c = find_certificate(b, "P")) certs.p = *c;
  if (auto c = find_certificate(b, "I-P")) certs.complement = *c;
  if (auto c = find_certificate(b, "2P-I")) certs.reflection = *c;

  ClassifyOptions opts;
  opts.max_level = st.max_level;
  opts.search = search_with_restarts(st.restarts);
  opts.hermitian_points = st.hermitian_points;
  opts.hermitian_level = st.hermitian_level;
  opts.hermitian_search = search_with_restarts(st.hermitian_restarts);
  const OpMap* extension = nullptr;
  for (const auto& a : b.aux)
    if (a.tag == "extension") extension = &a.map;
  opts.extension = extension;

  const ProjectionReport rep = classify_projection(p, tol, certs, opts);
  const std::size_t n = p.domain().ambient_dim();
  const CMat one = CMat::identity(n);

  f["idempotent_residual"] = rep.idempotent_residual;
  f["unital"] = rep.unital && approx_equal(rep.q, one, tol.eps_eq);
  put_levels(f, "P", rep.p_levels, rep.p_cert);
  put_levels(f, "I-P", rep.complement_levels, rep.complement_cert);
  put_levels(f, "2P-I", rep.reflection_levels, rep.reflection_cert);
  for (const auto& [tag, c] : {std::pair{"P", &rep.p_cert}, std::pair{"I-P", &rep.complement_cert},
                               std::pair{"2P-I", &rep.reflection_cert}}) {
    if (*c) ev.certificates.push_back({tag, {(*c)->valid, (*c)->upper, (*c)->failure}});
  }

  const Verdicts& v = rep.verdicts;
  f["verdict.contractive"] = v.contractive;
  f["verdict.bicontractive"] = v.bicontractive;
  f["verdict.symmetric"] = v.symmetric;
  f["verdict.hermitian"] = v.hermitian;
  f["verdict.contractive_certified"] = v.contractive_certified;
  f["verdict.bicontractive_certified"] = v.bicontractive_certified;
  f["verdict.symmetric_certified"] = v.symmetric_certified;
  f["hermitian_sup"] = rep.hermitian_sup;

  if (rep.unital) {
    f["q"] = rep.q;
    f["q_is_projection"] = rep.q_is_projection;
    if (rep.split_residual) f["split_residual"] = *rep.split_residual;
    if (rep.corner_residual) f["corner_residual"] = *rep.corner_residual;
  }
  f["range.dim"] = static_cast<double>(rep.range_dim);
  f["range.is_subalgebra"] = rep.range_flags.is_subalgebra;
  f["range.is_jordan_subalgebra"] = rep.range_flags.is_jordan_subalgebra;
  f["range.is_unital"] = rep.range_flags.is_unital;
  f["range.generates_space"] =
      generated_algebra(range_space(p, tol), tol).dim() == p.domain().dim();

  const RangeKernelReport& rk = rep.rk;
  f["rk.C2_in_B"] = rk.C2_in_B;
  f["rk.BmodC"] = rk.BmodC;
  f["rk.C3_in_B"] = rk.C3_in_B;
  f["rk.kernel_is_subalgebra"] = rk.kernel_is_subalgebra;
  f["rk.squarezero"] = rk.squarezero;
  f["rk.ideal_in_D"] = rk.ideal_in_D;
  f["rk.kernel_dim"] = static_cast<double>(rk.kernel_dim);
  f["rk.ideal_dim"] = static_cast<double>(rk.ideal_dim);
  f["rk.condexp_residual"] = rk.condexp_residual;
  f["rk.choi_effros_assoc"] = rk.choi_effros_assoc;
  f["theta.hom_residual"] = hom_residual(reflection_map(p), tol);

  if (rep.mac) {
    f["mac.p1"] = rep.mac->p1;
    f["mac.p2"] = rep.mac->p2;
    f["mac.left_condition"] = rep.mac->left_condition;
    f["mac.right_condition"] = rep.mac->right_condition;
  }
  if (rep.section5) {
    const Section5Report& s = *rep.section5;
    if (!s.e.empty()) f["s5.e"] = s.e;
    f["s5.re_ratio"] = s.re_complement_ratio;
    f["s5.re_hypothesis"] = s.re_hypothesis;
    f["s5.elements"] = static_cast<double>(s.elements.size());
    if (!s.elements.empty()) {
      f["s5.m1_residual"] = s.m1_residual;
      f["s5.m2_residual"] = s.m2_residual;
      f["s5.re_norm"] = s.m3.re_norm;
      f["s5.u_sq_norm"] = s.m3.u_sq_norm;
      f["s5.orth_residual"] = s.m3.orth_residual;
      f["s5.matre_nilpotent"] = s.matre_nilpotent;
      f["s5.quasi_regular"] = s.quasi_regular;
      bool slow = true;
      for (const auto& sb : s.slow_bounds) slow = slow && sb.value <= sb.bound + 1e-9;
      f["s5.slow_ok"] = slow;
      double corner = 0.0;
      for (const auto& el : s.elements) corner = std::max(corner, el.corner_residual);
      if (!s.e.empty()) f["s5.corner_residual"] = corner;
    }
  }

  if (st.choi) {
    const ChoiReport ch = choi_cp_check(is_full_algebra(p.domain()) ? p : extend_by_projection(p, tol), tol);
    f["choi.is_cp"] = ch.is_cp;
    f["choi.is_contractive_cp"] = ch.is_contractive_cp;
  }
  if (st.positivity && is_full_algebra(p.domain())) f["positive_sampled"] = sampled_positive(p, tol, 256);
  if (st.support) {
    const SupportReport s = support_e(p, tol);
    f["support.e"] = s.e;
    f["support.identity_residual"] = s.identity_residual;
    f["support.identities_hold"] = s.identities_hold;
  }
  if (st.symmetric) {
    const std::size_t level = std::min<std::size_t>(st.max_level, 2);
    SymmetricDecomposition sd =
        symmetric_decompose(p, tol, find_certificate(b, "2P-I"), level, search_with_restarts(st.restarts));
    f["sym.ok"] = sd.ok;
    if (sd.ok) {
      f["sym.q"] = sd.q;
      f["sym.formula_residual"] = sd.formula_residual;
      f["sym.hom_residual"] = sd.hom_residual;
      f["sym.involution_residual"] = sd.involution_residual;
    } else if (!sd.witness.empty()) {
      const std::size_t k = sd.witness.rows() / n;
      f["sym.witness_gain"] =
          op_norm(reflection_map(p).apply_amplified(sd.witness, k, tol)) / op_norm(sd.witness);
    }
    ev.symmetric = std::move(sd);
  }
  ev.projection = rep;
}

void evaluate_morphism(const ExampleBundle& b, const Tolerances& tol, Evaluation& ev) {
  MorphismOptions mo;
  mo.levels = b.settings.aux_level;
  mo.search = search_with_restarts(b.settings.hermitian_restarts);
  const MorphismReport m = morphism_check(b.map, 4, tol, mo);
  FieldMap& f = ev.fields;
  f["morph.hom_residual"] = m.hom_residual;
  f["morph.jordan_residual"] = m.jordan_residual;
  double pr = 0.0;
  for (double r : m.power_residuals) pr = std::max(pr, r);
  f["morph.power_residual"] = pr;
  f["morph.bijective"] = m.bijective;
  f["morph.real_positive"] = m.real_positive;
  double fwd = 0.0, inv = 0.0;
  for (const auto& [a, c] : m.isometric_levels) {
    fwd = std::max(fwd, a);
    inv = std::max(inv, c);
  }
  f["morph.lower"] = fwd;
  if (m.bijective) f["morph.inverse_lower"] = inv;
  if (auto c = find_certificate(b, "theta")) {
    const CertificateCheck chk = check_certificate(*c, b.map, tol);
    ev.certificates.push_back({"theta", chk});
    f["cert.theta.valid"] = chk.valid;
    if (chk.valid) f["theta.certified_upper"] = chk.certified_upper;
  }
  ev.morphism = m;
}

std::string fmt_double(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v == 0.0 ? 0.0 : v);
  return buf;
}

std::string fmt_cplx(cplx z, int digits) {
  if (z.imag() == 0.0) return fmt_double(z.real(), digits);
  if (z.real() == 0.0) return fmt_double(z.imag(), digits) + "i";
  const double im = z.imag();
  return fmt_double(z.real(), digits) + (im < 0 ? "-" : "+") + fmt_double(std::abs(im), digits) + "i";
}

}  // namespace

Evaluation evaluate_bundle(const ExampleBundle& b, const Tolerances& tol) {
  tol.validate();
  Evaluation ev;
  FieldMap& f = ev.fields;
  const StructureFlags sf = structure_flags(b.space, tol);
  f["space.dim"] = static_cast<double>(b.space.dim());
  f["space.ambient_dim"] = static_cast<double>(b.space.ambient_dim());
  f["space.is_subalgebra"] = sf.is_subalgebra;
  f["space.is_unital"] = sf.is_unital;

  if (b.kind == ExampleBundle::Kind::projection) {
    evaluate_projection(b, tol, ev);
  } else {
    evaluate_morphism(b, tol, ev);
  }

  NormSearchOptions aux_search = search_with_restarts(b.settings.hermitian_restarts);
  for (const auto& a : b.aux) {
    if (a.tag == "extension") continue;
    f[a.tag + ".lower"] = norm_lower(a.map, b.settings.aux_level, tol, aux_search).lower_bound;
    if (auto c = find_certificate(b, a.tag)) {
      const CertificateCheck chk = check_certificate(*c, a.map, tol);
      ev.certificates.push_back({a.tag, chk});
      f["cert." + a.tag + ".valid"] = chk.valid;
      if (chk.valid) f[a.tag + ".certified_upper"] = chk.certified_upper;
    }
  }
  // Certificates the pipeline did not consume: repeated targets and unknown tags.
  std::map<std::string, int> seen;
  for (const auto& c : b.certificates) {
    if (seen[c.target]++ == 0) {
      const bool consumed = std::any_of(ev.certificates.begin(), ev.certificates.end(),
                                        [&](const CertificateStatus& s) { return s.target == c.target; });
      if (consumed) continue;
    }
    std::optional<OpMap> target;
    if (c.target == "P" || c.target == "theta") target = b.map;
    if (c.target == "I-P") target = complement_map(b.map);
    if (c.target == "2P-I") target = reflection_map(b.map);
    for (const auto& a : b.aux)
      if (a.tag == c.target) target = a.map;
    CertificateStatus st{c.target, {}};
    if (target) {
      st.check = check_certificate(c.certificate, *target, tol);
    } else {
      st.check.failure = "no map with tag " + c.target;
    }
    ev.certificates.push_back(std::move(st));
  }
  for (const auto& pr : b.probes) f[pr.field] = pr.compute();
  return ev;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "PASS";
    case Outcome::fail: return "FAIL";
    case Outcome::skipped: return "SKIPPED";
  }
  return "FAIL";
}

bool compare_field(const FieldValue& actual, const Expectation& e, std::string* note) {
  auto bad = [&](const std::string& why) {
    if (note) *note = why;
    return false;
  };
  if (actual.index() != e.value.index()) return bad("type mismatch");
  if (const bool* a = std::get_if<bool>(&actual)) {
    const bool w = std::get<bool>(e.value);
    if (e.op == "==") return *a == w;
    if (e.op == "!=") return *a != w;
    return bad("comparator " + e.op + " not defined on booleans");
  }
  if (const double* a = std::get_if<double>(&actual)) {
    const double w = std::get<double>(e.value);
    if (e.op == "==") return *a == w;
    if (e.op == "!=") return *a != w;
    if (e.op == "<") return *a < w;
    if (e.op == "<=") return *a <= w;
    if (e.op == ">") return *a > w;
    if (e.op == ">=") return *a >= w;
    if (e.op == "~") return std::abs(*a - w) <= e.tolerance;
    return bad("unknown comparator " + e.op);
  }
  const CMat& a = std::get<CMat>(actual);
  const CMat& w = std::get<CMat>(e.value);
  if (e.op != "~") return bad("comparator " + e.op + " not defined on matrices");
  if (a.rows() != w.rows() || a.cols() != w.cols()) return bad("shape mismatch");
  return max_abs_diff(a, w) <= e.tolerance;
}

std::size_t VerifyResult::count(Outcome o) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [o](const AssertionResult& r) { return r.outcome == o; }));
}

VerifyResult verify_bundle(const ExampleBundle& b, const Tolerances& tol) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyResult vr;
  vr.name = b.name;
  vr.experimental = b.experimental;
  vr.evaluation = evaluate_bundle(b, tol);
  const FieldMap& f = vr.evaluation.fields;

  for (const auto& cs : vr.evaluation.certificates) {
    AssertionResult r;
    r.expectation.field = "cert." + cs.target + ".valid";
    r.expectation.op = "==";
    r.expectation.value = true;
    r.expectation.provenance = Provenance::elementary;
    r.expectation.source = "certificate validates";
    r.actual = cs.check.valid;
    r.outcome = cs.check.valid ? Outcome::pass : Outcome::fail;
    if (!cs.check.valid) r.note = cs.check.failure;
    vr.results.push_back(std::move(r));
  }
  for (const auto& e : b.expected) {
    AssertionResult r;
    r.expectation = e;
    auto it = f.find(e.field);
    if (it != f.end()) r.actual = it->second;
    if (e.experimental) {
      r.outcome = Outcome::skipped;
      r.note = "experimental; recorded only";
    } else if (!r.actual) {
      r.outcome = Outcome::fail;
      r.note = "field not computed";
    } else {
      r.outcome = compare_field(*r.actual, e, &r.note) ? Outcome::pass : Outcome::fail;
    }
    vr.results.push_back(std::move(r));
  }
  vr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return vr;
}

std::string format_value(const FieldValue& v, int digits) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const double* d = std::get_if<double>(&v)) return fmt_double(*d, digits);
  const CMat& m = std::get<CMat>(v);
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << fmt_cplx(m(i, j), digits);
    }
  }
  os << ']';
  return os.str();
}

std::string format_result(const AssertionResult& r) {
  const Expectation& e = r.expectation;
  std::ostringstream os;
  os << outcome_name(r.outcome) << ' ' << e.field << ' ' << e.op << ' ' << format_value(e.value);
  if (e.op == "~") os << " +- " << fmt_double(e.tolerance, 3);
  os << " [" << provenance_name(e.provenance) << ": " << e.source << ']';
  if (r.actual) os << " (actual " << format_value(*r.actual) << ')';
  if (!r.note.empty()) os << " (" << r.note << ')';
  return os.str();
}

}  // namespace opalg
