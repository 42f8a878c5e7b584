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

#include "opalg/projlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "opalg/linalg.hpp"
#include "opalg/random.hpp"

namespace opalg {

namespace {

double scale_of(const std::vector<CMat>& xs) {
  double s = 1.0;
  for (const auto& x : xs) s = std::max(s, x.max_abs());
  return s;
}

bool is_unital_map(const OpMap& p, const Tolerances& tol) {
  const std::size_t n = p.domain().ambient_dim();
  const CMat id = CMat::identity(n);
  if (p.codomain_dim() != n || !p.domain().contains(id, tol)) return false;
  return approx_equal(p.apply(id, tol), id, tol.eps_eq);
}

void require_endomap(const OpMap& p, const char* who) {
  if (p.codomain_dim() != p.domain().ambient_dim()) {
    throw Error(std::string(who) + "(" + p.name() + "): codomain differs from the domain ambient");
  }
}

void require_idempotent(const OpMap& p, const Tolerances& tol, const char* who) {
  require_endomap(p, who);
  for (const auto& y : p.images()) {
    if (!p.domain().contains(y, tol)) {
      throw Error(std::string(who) + "(" + p.name() + "): image leaves the domain");
    }
  }
  const double r = idempotent_residual(p, tol);
  if (r > tol.eps_eq * scale_of(p.images())) {
    throw Error(std::string(who) + "(" + p.name() + "): not idempotent (residual " +
                std::to_string(r) + ")");
  }
}

// D = algebra generated by Ran P and C = (I - P)(D).
struct IdealData {
  OpSpace range, d, c;
};

IdealData ideal_data(const OpMap& p, const Tolerances& tol) {
  IdealData r;
  r.range = range_space(p, tol);
  r.d = generated_algebra(r.range, tol);
  std::vector<CMat> ks;
  for (const auto& x : r.d.onb()) ks.push_back(x - p.apply(x, tol));
  r.c = span_of(p.domain().ambient_dim(), ks, "C", tol);
  return r;
}

OpSpace kernel_space(const OpMap& p, const Tolerances& tol) {
  std::vector<CMat> ks;
  for (const auto& x : p.domain().onb()) ks.push_back(x - p.apply(x, tol));
  return span_of(p.domain().ambient_dim(), ks, "Ker(" + p.name() + ")", tol);
}

bool all_in(const OpSpace& s, const std::vector<CMat>& xs, const Tolerances& tol) {
  return std::all_of(xs.begin(), xs.end(), [&](const CMat& x) { return s.contains(x, tol); });
}

CertifiedBound certify(const Certificate& c, const OpMap& target, const Tolerances& tol) {
  const CertificateCheck chk = check_certificate(c, target, tol);
  return {chk.valid, chk.certified_upper, chk.failure};
}

void attach(std::vector<NormReport>& levels, const std::optional<CertifiedBound>& cb) {
  if (!cb || !cb->valid) return;
  for (auto& r : levels) r.certified_upper = cb->upper;
}

double max_lower(const std::vector<NormReport>& levels) {
  double m = 0.0;
  for (const auto& r : levels) m = std::max(m, r.lower_bound);
  return m;
}

// Columns spanning the range of the projection q.
CMat range_isometry(const CMat& q) {
  const EigH e = eigh(q);
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < e.values.size(); ++k)
    if (e.values[k] > 0.5) cols.push_back(k);
  CMat w(q.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < q.rows(); ++i) w(i, j) = e.vectors(i, cols[j]);
  return w;
}

}  // namespace

double ProjectionReport::p_lower() const { return max_lower(p_levels); }
double ProjectionReport::complement_lower() const { return max_lower(complement_levels); }
double ProjectionReport::reflection_lower() const { return max_lower(reflection_levels); }

OpMap complement_map(const OpMap& p) {
  require_endomap(p, "complement_map");
  return linear_combination(1.0, identity_map(p.domain()), -1.0, p).renamed("I-" + p.name());
}

OpMap reflection_map(const OpMap& p) {
  require_endomap(p, "reflection_map");
  return linear_combination(2.0, p, -1.0, identity_map(p.domain())).renamed("2" + p.name() + "-I");
}

OpMap hermitian_rotation(const OpMap& p, double t) {
  require_endomap(p, "hermitian_rotation");
  const cplx w = std::polar(1.0, t) - 1.0;
  return linear_combination(1.0, identity_map(p.domain()), w, p)
      .renamed("I-" + p.name() + "+e^it" + p.name());
}

// ---------------------------------------------------------------------------

RangeKernelReport range_kernel_structure(const OpMap& p, const Tolerances& tol) {
  require_idempotent(p, tol, "range_kernel_structure");
  const OpSpace& a = p.domain();
  if (!structure_flags(a, tol).is_subalgebra) {
    throw Error("range_kernel_structure(" + p.name() + "): domain is not a subalgebra");
  }
  RangeKernelReport r;
  const OpSpace b = range_space(p, tol);
  const OpSpace k = kernel_space(p, tol);
  r.kernel_dim = k.dim();

  std::vector<CMat> kk, bk;
  for (const auto& z : k.onb())
    for (const auto& w : k.onb()) kk.push_back(z * w);
  for (const auto& y : b.onb())
    for (const auto& z : k.onb()) {
      bk.push_back(y * z);
      bk.push_back(z * y);
    }
  r.C2_in_B = all_in(b, kk, tol);
  r.kernel_is_subalgebra = all_in(k, kk, tol);
  r.BmodC = all_in(k, bk, tol);
  r.C3_in_B = true;
  for (const auto& zw : kk) {
    for (const auto& v : k.onb()) {
      if (!b.contains(zw * v, tol)) {
        r.C3_in_B = false;
        break;
      }
    }
    if (!r.C3_in_B) break;
  }

  const IdealData id = ideal_data(p, tol);
  r.ideal_dim = id.c.dim();
  r.squarezero = true;
  std::vector<CMat> dc;
  for (const auto& z : id.c.onb()) {
    for (const auto& w : id.c.onb())
      if ((z * w).max_abs() > tol.eps_eq) r.squarezero = false;
    for (const auto& d : id.d.onb()) {
      dc.push_back(d * z);
      dc.push_back(z * d);
    }
  }
  r.ideal_in_D = all_in(id.c, dc, tol);

  // Module identities P(P(a) b) = P(P(a) P(b)) = P(a P(b)).
  std::vector<CMat> pa;
  for (const auto& x : a.onb()) pa.push_back(p.apply(x, tol));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const CMat l = p.apply(pa[i] * a.onb()[j], tol);
      const CMat m = p.apply(pa[i] * pa[j], tol);
      const CMat rr = p.apply(a.onb()[i] * pa[j], tol);
      r.condexp_residual = std::max({r.condexp_residual, op_norm(l - m), op_norm(rr - m)});
    }
  // Associativity of x . y = P(xy) on Ran P.
  for (const auto& x : b.onb())
    for (const auto& y : b.onb()) {
      const CMat xy = p.apply(x * y, tol);
      for (const auto& z : b.onb()) {
        const CMat lhs = p.apply(xy * z, tol);
        const CMat rhs = p.apply(x * p.apply(y * z, tol), tol);
        r.choi_effros_assoc = std::max(r.choi_effros_assoc, op_norm(lhs - rhs));
      }
    }
  return r;
}

std::optional<OpMap> unital_reduction(const OpMap& p, const Tolerances& tol) {
  require_idempotent(p, tol, "unital_reduction");
  const std::size_t n = p.domain().ambient_dim();
  const CMat id = CMat::identity(n);
  if (!p.domain().contains(id, tol)) return std::nullopt;
  const CMat q = p.apply(id, tol);
  if (!is_projection(q, tol.eps_eq)) return std::nullopt;
  for (const auto& y : p.images())
    if (!approx_equal(q * y * q, y, tol.eps_eq * std::max(1.0, y.max_abs()))) return std::nullopt;
  const CMat w = range_isometry(q);
  const std::size_t r = w.cols();
  if (r == 0) return std::nullopt;
  const CMat ws = w.adjoint();
  // x -> W* x W identifies q M q with M_r.
  std::vector<CMat> corner;
  for (const auto& x : p.domain().basis()) corner.push_back(ws * x * w);
  const OpSpace qaq = span_of(r, corner, "q" + p.domain().name() + "q", tol);
  const OpMap pr = map_from_function(
      qaq, r, [&](const CMat& y) { return ws * p.apply(w * y * ws, tol) * w; }, p.name() + "'");
  const OpSpace d = generated_algebra(range_space(pr, tol), tol);
  return restrict_map(pr, d, tol);
}

// ---------------------------------------------------------------------------

MacReport mac_check(const OpMap& p, const Tolerances& tol) {
  require_idempotent(p, tol, "mac_check");
  if (!is_unital_map(p, tol)) throw Error("mac_check(" + p.name() + "): P is not unital");
  const std::size_t n = p.domain().ambient_dim();
  const IdealData id = ideal_data(p, tol);
  MacReport r;
  r.kernel_dim = id.c.dim();
  r.p1 = support(id.c.onb(), Side::left, tol, n);
  r.p2 = support(id.c.onb(), Side::right, tol, n);
  r.p = r.p1 + r.p2;
  const CMat one = CMat::identity(n);
  r.left_condition = true;
  r.right_condition = true;
  for (const auto& z : id.c.onb())
    for (const auto& y : id.range.onb()) {
      const double s = std::max(1.0, z.max_abs() * y.max_abs());
      if ((z * y.adjoint() * (one - r.p2)).max_abs() > tol.eps_eq * s) r.left_condition = false;
      if (((one - r.p1) * y.adjoint() * z).max_abs() > tol.eps_eq * s) r.right_condition = false;
    }
  return r;
}

// ---------------------------------------------------------------------------

SupportReport support_e(const OpMap& p, const Tolerances& tol, const SupportOptions& opts) {
  require_idempotent(p, tol, "support_e");
  const std::size_t n = p.domain().ambient_dim();
  if (!is_unital_map(p, tol)) throw Error("support_e(" + p.name() + "): P is not unital");
  const StructureFlags f = structure_flags(p.domain(), tol);
  if (!f.is_selfadjoint || !f.is_subalgebra) {
    throw Error("support_e(" + p.name() + "): domain is not a selfadjoint algebra");
  }

  // Real orthonormal basis of the Hermitian part of Ker P.
  const OpSpace k = selfadjoint_part(kernel_space(p, tol), tol);
  std::vector<CMat> herm;
  for (const auto& h0 : k.basis()) {
    CMat h = h0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& g : herm) h -= hs_inner(g, h).real() * g;
    const double nh = hs_norm(h);
    if (nh > 1e-10) herm.push_back((1.0 / nh) * h);
  }

  SupportReport rep;
  CMat s(n, n);
  int failures = 0;
  std::uint64_t round = 0;
  const CMat one = CMat::identity(n);
  while (!herm.empty() && failures < opts.max_failures) {
    const CMat free = one - s;
    std::vector<double> wv;
    double ww = 0.0;
    for (const auto& h : herm) {
      wv.push_back((h * free).trace().real());
      ww += wv.back() * wv.back();
    }
    if (ww < tol.eps_psd * tol.eps_psd) break;

    // Affine set {sum c_j h_j : <w, c> = 1}.
    auto affine = [&](const CMat& y) {
      std::vector<double> c;
      double wc = 0.0;
      for (std::size_t j = 0; j < herm.size(); ++j) {
        c.push_back(hs_inner(herm[j], y).real());
        wc += wv[j] * c.back();
      }
      CMat out(n, n);
      for (std::size_t j = 0; j < herm.size(); ++j) out += (c[j] + (1.0 - wc) * wv[j] / ww) * herm[j];
      return out;
    };
    Rng rng(derive_seed(tol.seed, 0x5afe0000 + round++));
    CMat x = gaussian_cmat(rng, n, n).re();
    CMat pp(n, n), qq(n, n), y(n, n);
    for (int it = 0; it < opts.dykstra_iterations; ++it) {
      y = affine(x + pp);
      pp = x + pp - y;
      const CMat xn = psd_part(y + qq);
      qq = y + qq - xn;
      x = xn;
    }
    ++rep.rounds;
    const double ny = op_norm(y);
    if (ny == 0.0 || min_eigenvalue(y) < -1e-7 * ny) {
      ++failures;
      continue;
    }
    // Noise-level eigenvalues must not enlarge the support.
    Tolerances st = tol;
    st.eps_psd = 1e-6;
    const std::vector<CMat> parts{s, psd_part(y)};
    const CMat s_new = support(parts, Side::left, st, n);
    if ((s_new - s).max_abs() < 1e-9) {
      ++failures;
      continue;
    }
    s = s_new;
    failures = 0;
  }
  rep.e = one - s;

  std::vector<CMat> gens = range_space(p, tol).basis();
  const std::size_t nr = gens.size();
  for (std::size_t i = 0; i < nr; ++i) gens.push_back(gens[i].adjoint());
  const OpSpace d = generated_algebra(span_of(n, gens, "Ran+Ran*", tol), tol);
  for (const auto& x : d.onb()) {
    const CMat xe = x * rep.e;
    double r1 = std::numeric_limits<double>::infinity();
    if (p.domain().contains(xe, tol)) r1 = op_norm(p.apply(xe, tol) - p.apply(x, tol));
    const double r2 = op_norm(p.apply(x, tol) * rep.e - xe);
    const double r3 = op_norm(rep.e * x * rep.e - xe);
    rep.identity_residual = std::max({rep.identity_residual, r1, r2, r3});
  }
  rep.identities_hold = rep.identity_residual <= 1e-8;
  return rep;
}

// ---------------------------------------------------------------------------

Section5Report section5_suite(const OpMap& p, const Tolerances& tol, const OpMap* extension) {
  require_idempotent(p, tol, "section5_suite");
  if (!is_unital_map(p, tol)) throw Error("section5_suite(" + p.name() + "): P is not unital");
  const std::size_t n = p.domain().ambient_dim();
  Section5Report rep;
  if (extension) rep.e = support_e(*extension, tol).e;

  // Hypothesis: P and I - P contractive on hermitian parts.
  {
    std::vector<CMat> xs = p.domain().onb();
    Rng rng(derive_seed(tol.seed, 0x5ec5));
    for (int t = 0; t < 64; ++t) {
      CMat x(n, n);
      for (const auto& b : p.domain().onb()) x += gaussian_cplx(rng) * b;
      xs.push_back(x);
    }
    for (const auto& x : xs) {
      const double h = op_norm(x.re());
      const CMat px = p.apply(x, tol);
      const double num = std::max(op_norm(px.re()), op_norm((x - px).re()));
      if (h <= 1e-12) {
        if (num > 1e-9 * std::max(1.0, op_norm(x)))
          rep.re_complement_ratio = std::numeric_limits<double>::infinity();
        continue;
      }
      rep.re_complement_ratio = std::max(rep.re_complement_ratio, num / h);
    }
    rep.re_hypothesis = rep.re_complement_ratio <= 1.0 + tol.eps_norm;
  }

  const IdealData id = ideal_data(p, tol);
  const CMat one = CMat::identity(n);
  for (int k = 1; k <= 4; ++k) {
    const double bound = 2.0 / std::pow(2.0, std::pow(2.0, k));
    rep.slow_bounds.push_back({k, 0.0, bound});
  }
  double worst_re = -1.0;
  for (const auto& z : id.c.onb()) {
    Section5Element el;
    el.x = (1.0 / op_norm(z)) * z;
    const CMat& x = el.x;
    const HermDecomposition hd = herm_decompose(x);
    const double parts[4] = {op_norm(hd.a_plus), op_norm(hd.a_minus), op_norm(hd.b_plus),
                             op_norm(hd.b_minus)};
    el.m1_residual = *std::max_element(parts, parts + 4) - *std::min_element(parts, parts + 4);

    const double na = op_norm(hd.a);
    if (na > 1e-12) {
      const CMat a1 = (1.0 / na) * hd.a;
      CMat b1 = (1.0 / na) * hd.b;
      b1 *= 1.0 / std::max(1.0, op_norm(b1));
      const CMat ua = tripotent_u(a1, tol);
      const CMat ub = tripotent_u(b1, tol);
      el.m2_residual = op_norm(ua * ua - ub * ub);
    }

    el.m3.re_norm = na;
    const CMat u = tripotent_u(x, tol);
    el.m3.u_sq_norm = op_norm(u * u);
    const CMat y = x - u;
    el.m3.orth_residual = std::max({op_norm(u * y), op_norm(u * y.adjoint()), op_norm(y * u),
                                    op_norm(y.adjoint() * u)});

    CMat pw = x;
    for (std::size_t k = 1; k <= n; ++k) {
      if (pw.max_abs() < tol.eps_eq) {
        el.nilpotent = true;
        el.nilpotency_index = k;
        break;
      }
      pw = pw * x;
    }
    CMat sq = x;
    for (int k = 1; k <= 4; ++k) {
      sq = sq * sq;
      el.slow.push_back({k, op_norm(sq), 2.0 / std::pow(2.0, std::pow(2.0, k))});
    }
    const Svd sv = svd(one - x);
    el.quasi_regular = sv.s.back() > tol.eps_psd;
    if (!rep.e.empty()) el.corner_residual = op_norm(rep.e * x) + op_norm(x * rep.e);

    rep.m1_residual = std::max(rep.m1_residual, el.m1_residual);
    rep.m2_residual = std::max(rep.m2_residual, el.m2_residual);
    if (std::abs(el.m3.re_norm - 0.5) > worst_re) {
      worst_re = std::abs(el.m3.re_norm - 0.5);
      rep.m3.re_norm = el.m3.re_norm;
    }
    rep.m3.u_sq_norm = std::max(rep.m3.u_sq_norm, el.m3.u_sq_norm);
    rep.m3.orth_residual = std::max(rep.m3.orth_residual, el.m3.orth_residual);
    rep.matre_nilpotent = rep.matre_nilpotent && el.nilpotent;
    rep.quasi_regular = rep.quasi_regular && el.quasi_regular;
    for (std::size_t k = 0; k < 4; ++k)
      if (el.slow[k].value > rep.slow_bounds[k].value) rep.slow_bounds[k] = el.slow[k];
    rep.elements.push_back(std::move(el));
  }
  return rep;
}

// ---------------------------------------------------------------------------

SymmetricDecomposition symmetric_decompose(const OpMap& p, const Tolerances& tol,
                                           const Certificate* reflection_certificate,
                                           std::size_t level, const NormSearchOptions& search) {
  require_idempotent(p, tol, "symmetric_decompose");
  SymmetricDecomposition r;
  r.theta = reflection_map(p);
  const std::size_t n = p.domain().ambient_dim();

  if (reflection_certificate) {
    const CertificateCheck chk = check_certificate(*reflection_certificate, r.theta, tol);
    if (!chk.valid || chk.certified_upper > 1.0 + tol.eps_norm) {
      r.failure = chk.valid ? "certificate bound exceeds 1" : "certificate invalid: " + chk.failure;
      return r;
    }
  } else {
    const std::size_t k = level == 0 ? std::min(smith_level(p), kAmplifySizeCap / n) : level;
    const NormReport nr = norm_lower(r.theta, k, tol, search);
    r.reflection_lower = nr.lower_bound;
    if (nr.lower_bound > 1.0 + tol.eps_norm) {
      r.failure = "2P-I is not contractive at level " + std::to_string(k);
      r.witness = nr.witness;
      return r;
    }
  }

  const CMat one = CMat::identity(n);
  if (!p.domain().contains(one, tol)) {
    r.failure = "domain is not unital";
    return r;
  }
  r.q = p.apply(one, tol);
  if (!is_projection(r.q, tol.eps_eq)) {
    r.failure = "P(1) is not a projection";
    r.witness = r.q;
    return r;
  }
  const CMat s = 2.0 * r.q - one;
  // Forced by the formula: theta(a) = (2P(a) - a)(2q - 1); equals 2P - I when q = 1.
  r.theta = map_from_function(
      p.domain(), n, [p, s, tol](const CMat& a) { return (2.0 * p.apply(a, tol) - a) * s; }, "theta");
  const auto& onb = p.domain().onb();
  for (const auto& y : r.theta.onb_images()) {
    if (!p.domain().contains(y, tol)) {
      r.failure = "theta does not map the domain into itself";
      r.witness = y;
      return r;
    }
  }
  for (std::size_t i = 0; i < onb.size(); ++i) {
    const CMat tx = r.theta.apply(onb[i], tol);
    r.involution_residual = std::max(r.involution_residual, op_norm(r.theta.apply(tx, tol) - onb[i]));
    const CMat formula = 0.5 * (onb[i] + tx * s);
    r.formula_residual = std::max(r.formula_residual, op_norm(p.apply(onb[i], tol) - formula));
    for (std::size_t j = 0; j < onb.size(); ++j) {
      const CMat xy = onb[i] * onb[j];
      if (!p.domain().contains(xy, tol)) {
        r.hom_residual = std::numeric_limits<double>::infinity();
        continue;
      }
      r.hom_residual = std::max(
          r.hom_residual, op_norm(r.theta.apply(xy, tol) - tx * r.theta.apply(onb[j], tol)));
    }
  }
  r.fixed_q_residual = op_norm(r.theta.apply(r.q, tol) - r.q);
  const double lim = tol.eps_eq * scale_of(onb);
  if (r.involution_residual > lim) {
    r.failure = "theta is not an involution";
  } else if (r.hom_residual > lim) {
    r.failure = "theta is not multiplicative";
  } else if (r.fixed_q_residual > lim) {
    r.failure = "theta(q) != q";
  } else if (r.formula_residual > lim) {
    r.failure = "P(a) != (a + theta(a)(2q-1))/2";
  } else {
    r.ok = true;
  }
  return r;
}

OpMap symmetric_build(const OpMap& theta, const CMat& q, const Tolerances& tol) {
  require_endomap(theta, "symmetric_build");
  const OpSpace& a = theta.domain();
  const std::size_t n = a.ambient_dim();
  const double lim = tol.eps_eq * scale_of(a.onb());
  for (const auto& y : theta.images())
    if (!a.contains(y, tol)) throw Error("symmetric_build: theta leaves the domain");
  for (const auto& x : a.onb()) {
    const CMat tx = theta.apply(x, tol);
    if (op_norm(theta.apply(tx, tol) - x) > lim) throw Error("symmetric_build: theta is not an involution");
    for (const auto& y : a.onb()) {
      const CMat xy = x * y;
      if (!a.contains(xy, tol)) throw Error("symmetric_build: domain is not a subalgebra");
      if (op_norm(theta.apply(xy, tol) - tx * theta.apply(y, tol)) > lim) {
        throw Error("symmetric_build: theta is not multiplicative");
      }
    }
  }
  if (q.rows() != n || !is_projection(q, tol.eps_eq)) throw Error("symmetric_build: q is not a projection");
  if (!a.contains(q, tol)) throw Error("symmetric_build: q is not in the domain");
  if (op_norm(theta.apply(q, tol) - q) > lim) throw Error("symmetric_build: theta(q) != q");
  const CMat s = 2.0 * q - CMat::identity(n);
  return map_from_function(
      a, n, [&](const CMat& x) { return 0.5 * (x + theta.apply(x, tol) * s); },
      "sym(" + theta.name() + ")");
}

// ---------------------------------------------------------------------------

ProjectionReport classify_projection(const OpMap& p, const Tolerances& tol,
                                     const ProjectionCertificates& certs,
                                     const ClassifyOptions& opts) {
  tol.validate();
  require_idempotent(p, tol, "classify_projection");
  const std::size_t n = p.domain().ambient_dim();
  ProjectionReport rep;
  rep.name = p.name();
  rep.idempotent_residual = idempotent_residual(p, tol);
  const CMat one = CMat::identity(n);
  rep.unital = p.domain().contains(one, tol);

  const OpMap comp = complement_map(p);
  const OpMap refl = reflection_map(p);
  if (certs.p) rep.p_cert = certify(*certs.p, p, tol);
  if (certs.complement) rep.complement_cert = certify(*certs.complement, comp, tol);
  if (certs.reflection) rep.reflection_cert = certify(*certs.reflection, refl, tol);

  const std::size_t cap = kAmplifySizeCap / n;
  const std::size_t levels = std::min(opts.max_level == 0 ? smith_level(p) : opts.max_level, cap);
  rep.p_levels = norm_lower_levels(p, levels, tol, opts.search);
  rep.complement_levels = norm_lower_levels(comp, levels, tol, opts.search);
  rep.reflection_levels = norm_lower_levels(refl, levels, tol, opts.search);
  attach(rep.p_levels, rep.p_cert);
  attach(rep.complement_levels, rep.complement_cert);
  attach(rep.reflection_levels, rep.reflection_cert);

  const std::size_t hl = std::min(opts.hermitian_level == 0 ? levels : opts.hermitian_level, cap);
  for (int j = 0; j < opts.hermitian_points; ++j) {
    const double t = 2.0 * std::numbers::pi * j / opts.hermitian_points;
    const double v = norm_lower(hermitian_rotation(p, t), hl, tol, opts.hermitian_search).lower_bound;
    if (v > rep.hermitian_sup) {
      rep.hermitian_sup = v;
      rep.hermitian_argmax = t;
    }
  }

  if (rep.unital) {
    rep.q = p.apply(one, tol);
    rep.q_is_projection = is_projection(rep.q, tol.eps_eq);
    double split = 0.0, corner = 0.0;
    bool split_ok = true;
    for (const auto& a : p.domain().basis()) {
      const CMat qaq = rep.q * a * rep.q;
      const CMat pa = p.apply(a, tol);
      if (p.domain().contains(qaq, tol)) {
        split = std::max(split, op_norm(pa - p.apply(qaq, tol)));
      } else {
        split_ok = false;
      }
      corner = std::max(corner, op_norm(pa - rep.q * pa * rep.q));
    }
    if (split_ok) rep.split_residual = split;
    rep.corner_residual = corner;
  }

  const OpSpace range = range_space(p, tol);
  rep.range_dim = range.dim();
  rep.range_flags = structure_flags(range, tol);
  rep.rk = range_kernel_structure(p, tol);

  // mac and the kernel suite need a unital projection.
  std::optional<OpMap> unital;
  if (!rep.unital) {
    rep.skipped.push_back({"mac", "domain contains the identity", CMat()});
  } else if (is_unital_map(p, tol)) {
    unital = p;
  } else if (!rep.q_is_projection) {
    rep.skipped.push_back({"mac", "P(1) is a projection", rep.q});
  } else if (rep.corner_residual && *rep.corner_residual > tol.eps_eq) {
    std::size_t worst = 0;
    double wv = -1.0;
    for (std::size_t i = 0; i < p.images().size(); ++i) {
      const CMat& y = p.images()[i];
      const double v = op_norm(y - rep.q * y * rep.q);
      if (v > wv) {
        wv = v;
        worst = i;
      }
    }
    rep.skipped.push_back({"mac", "Ran P = q Ran P q", p.images()[worst]});
  } else {
    unital = unital_reduction(p, tol);
    rep.reduced = unital.has_value();
    if (!unital) rep.skipped.push_back({"mac", "unital compression exists", rep.q});
  }
  if (unital) {
    rep.mac = mac_check(*unital, tol);
    if (opts.run_section5) {
      rep.section5 = section5_suite(*unital, tol, rep.reduced ? nullptr : opts.extension);
    }
  } else if (opts.run_section5) {
    rep.skipped.push_back({"section5", rep.skipped.back().hypothesis, rep.skipped.back().witness});
  }

  const double lim = 1.0 + tol.eps_norm;
  auto certified = [&](const std::optional<CertifiedBound>& c) { return c && c->valid && c->upper <= lim; };
  // A valid certificate decides; otherwise the lower bounds do.
  auto holds = [&](const std::optional<CertifiedBound>& c, double lower) {
    return (c && c->valid) ? c->upper <= lim : lower <= lim;
  };
  Verdicts& v = rep.verdicts;
  v.contractive_certified = certified(rep.p_cert);
  v.bicontractive_certified = v.contractive_certified && certified(rep.complement_cert);
  v.symmetric_certified = certified(rep.reflection_cert);
  v.contractive = holds(rep.p_cert, rep.p_lower());
  v.bicontractive = v.contractive && holds(rep.complement_cert, rep.complement_lower());
  v.symmetric = holds(rep.reflection_cert, rep.reflection_lower());
  v.hermitian = rep.hermitian_sup <= lim;
  return rep;
}

// ---------------------------------------------------------------------------

OpMap inverse_map(const OpMap& t, const Tolerances& tol) {
  const OpSpace r = make_space(t.codomain_dim(), t.images(), "Ran(" + t.name() + ")", tol);
  return make_map(r, t.domain().ambient_dim(), t.domain().basis(), t.name() + "^-1");
}

MorphismReport morphism_check(const OpMap& t, int nmax, const Tolerances& tol,
                              const MorphismOptions& opts) {
  const OpSpace& a = t.domain();
  const std::size_t n = a.ambient_dim();
  const std::size_t m = t.codomain_dim();
  MorphismReport r;
  for (const auto& x : a.onb()) {
    const CMat tx = t.apply(x, tol);
    for (const auto& y : a.onb()) {
      const CMat xy = x * y;
      const CMat yx = y * x;
      if (!a.contains(xy, tol)) throw Error("morphism_check(" + t.name() + "): domain is not a subalgebra");
      const CMat ty = t.apply(y, tol);
      r.hom_residual = std::max(r.hom_residual, op_norm(t.apply(xy, tol) - tx * ty));
      const CMat jl = t.apply(0.5 * (xy + yx), tol);
      r.jordan_residual = std::max(r.jordan_residual, op_norm(jl - 0.5 * (tx * ty + ty * tx)));
    }
  }

  std::vector<CMat> samples = a.onb();
  Rng rng(derive_seed(tol.seed, 0x30f));
  for (int s = 0; s < opts.power_samples; ++s) {
    CMat x(n, n);
    for (const auto& b : a.onb()) x += gaussian_cplx(rng) * b;
    samples.push_back(x);
  }
  for (int k = 2; k <= nmax; ++k) {
    double worst = 0.0;
    for (const auto& x0 : samples) {
      const double nx = op_norm(x0);
      if (nx == 0.0) continue;
      const CMat x = (1.0 / nx) * x0;
      CMat xk = x;
      CMat txk = t.apply(x, tol);
      const CMat tx = txk;
      for (int j = 1; j < k; ++j) {
        xk = xk * x;
        txk = txk * tx;
      }
      worst = std::max(worst, op_norm(t.apply(xk, tol) - txk));
    }
    r.power_residuals.push_back(worst);
  }

  OpMap inv;
  try {
    inv = inverse_map(t, tol);
    r.bijective = true;
  } catch (const Error&) {
    r.bijective = false;
  }
  for (std::size_t k = 1; k <= opts.levels && k * std::max(n, m) <= kAmplifySizeCap; ++k) {
    const double fwd = norm_lower(t, k, tol, opts.search).lower_bound;
    const double bwd = r.bijective ? norm_lower(inv, k, tol, opts.search).lower_bound : 0.0;
    r.isometric_levels.emplace_back(fwd, bwd);
  }

  r.real_positive = true;
  for (const auto& [k, x] : sample_accretive(a, 64, 2, tol)) {
    const CMat y = t.apply_amplified(x, k, tol);
    if (min_eigenvalue(y.re()) < -tol.eps_psd * std::max(1.0, op_norm(x))) {
      r.real_positive = false;
      break;
    }
  }
  return r;
}

}  // namespace opalg
