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

// Acceptance run: one PASS/FAIL line per criterion. Exits 1 when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "opalg/gallery.hpp"
#include "opalg/linalg.hpp"
#include "opalg/projlab.hpp"
#include "opalg/verify.hpp"
#include "properties.hpp"

using namespace opalg;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CMat E(std::size_t n, std::size_t i, std::size_t j) { return CMat::unit(n, i - 1, j - 1); }

// Collects failed sub-checks for one criterion.
class Criterion {
 public:
  Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }

  bool report() const {
    const bool ok = failures_.empty();
    std::cout << "criterion " << number_ << ": " << (ok ? "PASS" : "FAIL") << ' ' << title_;
    for (const auto& n : notes_) std::cout << "; " << n;
    for (const auto& f : failures_) std::cout << "; failed: " << f;
    std::cout << std::endl;
    return ok;
  }

 private:
  int number_;
  std::string title_;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <class T>
const T* field(const Evaluation& e, const std::string& name) {
  const auto it = e.fields.find(name);
  return it == e.fields.end() ? nullptr : std::get_if<T>(&it->second);
}

bool field_is(const Evaluation& e, const std::string& name, bool v) {
  const bool* b = field<bool>(e, name);
  return b && *b == v;
}

double field_num(const Evaluation& e, const std::string& name) {
  const double* d = field<double>(e, name);
  return d ? *d : std::nan("");
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

struct FiveByFive {
  VerifyResult result;
  double seconds = 0.0;
};

FiveByFive run_five_by_five() {
  const auto t0 = Clock::now();
  FiveByFive r{verify_bundle(build_example("five_by_five"))};
  r.seconds = since(t0);
  return r;
}

bool criterion1(const FiveByFive& p5) {
  Criterion c(1, "five_by_five verifies");
  const Evaluation& e = p5.result.evaluation;
  c.require(p5.result.ok(), "bundle assertions");
  c.require(field_num(e, "idempotent_residual") < 1e-10, "idempotent residual");
  c.require(field_is(e, "unital", true), "unital");
  c.require(within(field_num(e, "P.certified_upper"), 1.0, 1e-9), "P certified upper 1");
  c.require(within(field_num(e, "I-P.certified_upper"), 1.0, 1e-9), "I-P certified upper 1");
  const double p5l = field_num(e, "P.lower.level5");
  const double c5l = field_num(e, "I-P.lower.level5");
  c.require(within(p5l, 1.0, 1e-6), "P level-5 lower " + num(p5l));
  c.require(within(c5l, 1.0, 1e-6), "I-P level-5 lower " + num(c5l));
  c.require(field_is(e, "range.is_subalgebra", false), "range not a subalgebra");
  c.require(field_is(e, "range.is_jordan_subalgebra", false), "range not a Jordan subalgebra");
  const double refl = field_num(e, "2P-I.lower");
  c.require(refl > 1.01, "2P-I lower " + num(refl));
  c.require(p5.seconds < 60.0, "runtime");
  c.note("2P-I lower " + num(refl) + ", " + num(p5.seconds) + " s");
  return c.report();
}

bool criterion2(const FiveByFive& p5) {
  Criterion c(2, "mac oracle and soundness");
  const auto t0 = Clock::now();
  const Evaluation& e = p5.result.evaluation;
  const CMat* p1 = field<CMat>(e, "mac.p1");
  const CMat* p2 = field<CMat>(e, "mac.p2");
  c.require(p1 && max_abs_diff(*p1, E(5, 1, 1)) < 1e-9, "five_by_five p1 = E11");
  c.require(p2 && max_abs_diff(*p2, E(5, 3, 3)) < 1e-9, "five_by_five p2 = E33");
  c.require(field_is(e, "mac.left_condition", false), "five_by_five left condition false");

  const VerifyResult joup = verify_bundle(build_example("joup"));
  const Evaluation& j = joup.evaluation;
  c.require(field_is(j, "mac.left_condition", false), "joup left condition false");
  c.require(field_is(j, "range.is_subalgebra", false), "joup range not a subalgebra");
  c.require(field_is(j, "range.is_jordan_subalgebra", true), "joup range is a Jordan subalgebra");

  // Whenever a mac condition holds for a certified completely bicontractive
  // projection, the range must be a subalgebra.
  int holds = 0, eligible = 0;
  for (const auto& g : properties::detail::gallery_projections()) {
    if (!g.p_certified || !g.complement_certified) continue;
    std::optional<OpMap> m;
    if (g.unital) {
      m = g.p;
    } else {
      m = unital_reduction(g.p);
    }
    if (!m) continue;
    ++eligible;
    const MacReport mac = mac_check(*m);
    if (!mac.left_condition && !mac.right_condition) continue;
    ++holds;
    c.require(structure_flags(range_space(*m)).is_subalgebra, g.name + " has a mac condition but no subalgebra range");
  }
  const double seconds = p5.seconds + since(t0);
  c.require(seconds < 120.0, "runtime");
  c.note(std::to_string(holds) + " of " + std::to_string(eligible) + " bicontractive gallery projections satisfy a mac condition, " + num(seconds) + " s");
  return c.report();
}

bool criterion3() {
  Criterion c(3, "support projection of ptilde_m3m2");
  const ExampleBundle b = build_example("ptilde_m3m2");
  const SupportReport s = support_e(b.map);
  const CMat target = direct_sum(CMat(3, 3), CMat::identity(2));
  const double err = s.e.empty() ? 1.0 : max_abs_diff(s.e, target);
  c.require(err < 1e-8, "e = 0 + I2 (deviation " + num(err) + ")");
  c.require(s.identity_residual < 1e-8 && s.identities_hold, "identities (residual " + num(s.identity_residual) + ")");
  c.note("identity residual " + num(s.identity_residual));
  return c.report();
}

bool criterion4() {
  Criterion c(4, "completely positive boundary");
  Tolerances tol;
  tol.eps_psd = 1e-8;
  const ExampleBundle pt = build_example("ptilde_m3m2");
  const ChoiReport pc = choi_cp_check(extend_by_projection(pt.map, tol), tol);
  c.require(pc.is_cp && pc.is_contractive_cp, "ptilde_m3m2 contractive CP");

  const ExampleBundle ta = build_example("transpose_avg_m2");
  const ChoiReport tc = choi_cp_check(ta.map, tol);
  c.require(!tc.is_cp, "transpose average not CP");
  bool certified = false;
  const OpMap ip = complement_map(ta.map);
  for (const auto& cert : ta.certificates) {
    if (cert.target != "I-P") continue;
    const CertificateCheck chk = check_certificate(cert.certificate, ip, tol);
    certified = certified || (chk.valid && chk.certified_upper <= 1.0 + tol.eps_norm);
  }
  c.require(certified, "transpose average I-P certified");
  Rng rng(derive_seed(7, 4));
  bool positive = true;
  for (int i = 0; i < 256; ++i) {
    const CMat g = gaussian_cmat(rng, 2, 2);
    if (min_eigenvalue(ta.map.apply(g * g.adjoint(), tol).re()) < -tol.eps_psd * op_norm(g * g.adjoint())) positive = false;
  }
  c.require(positive, "transpose average positive on samples");
  return c.report();
}

bool criterion5() {
  Criterion c(5, "symmetric pipeline");
  const Tolerances tol;
  const OpSpace d2 = make_space(2, {E(2, 1, 1), E(2, 2, 2)}, "D2");
  const OpMap swap = map_from_function(d2, 2, [](const CMat& x) { return CMat::diag({x(1, 1), x(0, 0)}); }, "swap");
  const OpMap p = symmetric_build(swap, CMat::identity(2), tol);
  const SymmetricDecomposition sd = symmetric_decompose(p, tol, nullptr, 2);
  c.require(sd.ok, "decomposition of the built projection: " + sd.failure);
  c.require(sd.formula_residual < 1e-10, "formula residual " + num(sd.formula_residual));
  bool same = sd.ok;
  for (const auto& x : d2.basis()) same = same && approx_equal(sd.theta.apply(x), swap.apply(x), 1e-10);
  c.require(same, "recovered theta is the swap");

  ClassifyOptions opts;
  opts.max_level = 2;
  opts.hermitian_level = 2;
  const ProjectionReport rep = classify_projection(p, tol, {}, opts);
  c.require(rep.verdicts.symmetric, "classify reports symmetric");
  c.require(rep.hermitian_sup <= 1.0 + 1e-6, "hermitian_sup " + num(rep.hermitian_sup) + " <= 1 + 1e-6");

  const SymmetricDecomposition bad = symmetric_decompose(five_by_five_projection(), tol, nullptr, 2);
  const bool witnessed = !bad.ok && !bad.witness.empty() &&
                         op_norm(reflection_map(five_by_five_projection()).apply_amplified(bad.witness, bad.witness.rows() / 5)) >
                             op_norm(bad.witness) * (1.0 + 1e-9);
  c.require(witnessed, "five_by_five decomposition fails with a norm witness");
  c.note("hermitian_sup " + num(rep.hermitian_sup) + ", five_by_five reflection lower " + num(bad.reflection_lower));
  return c.report();
}

bool criterion6(const FiveByFive& p5) {
  Criterion c(6, "square-zero kernel analysis on five_by_five");
  const auto& rep = p5.result.evaluation.projection;
  const Section5Element* el = nullptr;
  if (rep && rep->section5) {
    for (const auto& x : rep->section5->elements) {
      // Elements are normalized; E13 up to a phase.
      if (std::abs(std::abs(x.x(0, 2)) - 1.0) < 1e-9 && std::abs(hs_norm(x.x) - 1.0) < 1e-9) el = &x;
    }
  }
  c.require(el != nullptr, "element E13 analysed");
  if (el) {
    c.require(within(el->m3.re_norm, 0.5, 1e-9), "||Re x|| = " + num(el->m3.re_norm));
    c.require(el->m3.u_sq_norm < 1e-9, "||u(x)^2|| = " + num(el->m3.u_sq_norm));
    c.require(el->m1_residual < 1e-9, "part norms agree (residual " + num(el->m1_residual) + ")");
    c.require(el->nilpotent, "nilpotent");
    int checked = 0;
    for (const auto& s : el->slow) {
      if (s.n > 4) continue;
      ++checked;
      c.require(s.value <= s.bound + 1e-9, "||x^(2^" + std::to_string(s.n) + ")|| = " + num(s.value));
    }
    c.require(checked >= 4, "decay checked for n <= 4");
  }
  return c.report();
}

bool criterion7() {
  Criterion c(7, "property suites");
  const auto t0 = Clock::now();
  for (const auto& o : properties::run_all()) {
    c.require(o.ok && o.instances == properties::kInstances, o.name + " (" + o.detail + ")");
    c.note(o.name + ": " + std::to_string(o.instances) + " instances");
  }
  const double seconds = since(t0);
  c.require(seconds < 300.0, "runtime");
  c.note(num(seconds) + " s");
  return c.report();
}

bool criterion8() {
  Criterion c(8, "verify --all");
  const auto t0 = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run({"verify", "--all"}, out, err);
  const double seconds = since(t0);
  c.require(code == 0, "exit code " + std::to_string(code));
  std::istringstream lines(out.str());
  std::string line, section;
  int fails = 0, skips = 0, undocumented = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("== ", 0) == 0) section = line.substr(3, line.find(' ', 3) - 3);
    if (line.rfind("FAIL", 0) == 0) ++fails;
    if (line.rfind("SKIPPED", 0) == 0) {
      ++skips;
      const bool documented = (section == "five_by_five_mod23" || section == "five_by_five_mod32") &&
                              line.find("mac.") != std::string::npos;
      undocumented += !documented;
    }
  }
  c.require(fails == 0, std::to_string(fails) + " FAIL lines");
  c.require(undocumented == 0, std::to_string(undocumented) + " undocumented SKIPPED lines");
  c.require(seconds < 600.0, "runtime");
  c.note(std::to_string(skips) + " SKIPPED, " + num(seconds) + " s");
  return c.report();
}

}  // namespace

int main() {
  try {
    const FiveByFive p5 = run_five_by_five();
    bool ok = true;
    ok &= criterion1(p5);
    ok &= criterion2(p5);
    ok &= criterion3();
    ok &= criterion4();
    ok &= criterion5();
    ok &= criterion6(p5);
    ok &= criterion7();
    ok &= criterion8();
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << std::endl;
    return 1;
  }
}
