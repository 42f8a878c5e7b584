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

#include "opalg/cbmaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opalg/certificate.hpp"
#include "opalg/linalg.hpp"
#include "opalg/random.hpp"

namespace opalg {

CMat OpMap::apply(const CMat& x, const Tolerances& tol) const {
  if (x.rows() != domain_.ambient_dim() || x.cols() != domain_.ambient_dim()) {
    throw Error("apply(" + name_ + "): input is " + std::to_string(x.rows()) + "x" +
                std::to_string(x.cols()) + ", domain lives in M_" +
                std::to_string(domain_.ambient_dim()));
  }
  if (!domain_.contains(x, tol)) {
    throw Error("apply(" + name_ + "): input outside the domain (residual " +
                std::to_string(domain_.residual(x)) + ")");
  }
  CMat y(m_, m_);
  const auto c = domain_.onb_coefficients(x);
  for (std::size_t k = 0; k < c.size(); ++k) y += c[k] * onb_images_[k];
  return y;
}

CMat OpMap::apply_amplified(const CMat& x, std::size_t k, const Tolerances& tol) const {
  const std::size_t n = domain_.ambient_dim();
  if (k == 0 || x.rows() != k * n || x.cols() != k * n) {
    throw Error("apply_amplified(" + name_ + "): shape mismatch");
  }
  CMat y(k * m_, k * m_);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) y.set_block(i * m_, j * m_, apply(x.block(i * n, j * n, n, n), tol));
  return y;
}

OpMap OpMap::renamed(std::string name) const {
  OpMap f = *this;
  f.name_ = std::move(name);
  return f;
}

OpMap make_map(OpSpace domain, std::size_t codomain_dim, std::vector<CMat> images,
               std::string name) {
  if (codomain_dim == 0) throw Error("make_map(" + name + "): codomain dimension must be positive");
  if (images.size() != domain.dim()) {
    throw Error("make_map(" + name + "): " + std::to_string(images.size()) +
                " images for a domain of dimension " + std::to_string(domain.dim()));
  }
  for (const auto& y : images) {
    if (y.rows() != codomain_dim || y.cols() != codomain_dim) {
      throw Error("make_map(" + name + "): image shape mismatch");
    }
    if (!y.all_finite()) throw Error("make_map(" + name + "): non-finite image");
  }
  OpMap f;
  f.name_ = std::move(name);
  f.m_ = codomain_dim;
  for (std::size_t k = 0; k < domain.dim(); ++k) {
    CMat y(codomain_dim, codomain_dim);
    const auto& t = domain.onb_in_basis(k);
    for (std::size_t i = 0; i < images.size(); ++i) y += t[i] * images[i];
    f.onb_images_.push_back(std::move(y));
  }
  f.images_ = std::move(images);
  f.domain_ = std::move(domain);
  return f;
}

OpMap map_from_function(OpSpace domain, std::size_t codomain_dim,
                        const std::function<CMat(const CMat&)>& f, std::string name) {
  std::vector<CMat> images;
  for (const auto& b : domain.basis()) images.push_back(f(b));
  return make_map(std::move(domain), codomain_dim, std::move(images), std::move(name));
}

OpMap identity_map(const OpSpace& s) {
  return make_map(s, s.ambient_dim(), s.basis(), "id(" + s.name() + ")");
}

OpMap zero_map(const OpSpace& s, std::size_t codomain_dim) {
  return make_map(s, codomain_dim, std::vector<CMat>(s.dim(), CMat(codomain_dim, codomain_dim)),
                  "0");
}

OpMap compose(const OpMap& outer, const OpMap& inner, const Tolerances& tol) {
  std::vector<CMat> images;
  for (const auto& y : inner.images()) images.push_back(outer.apply(y, tol));
  return make_map(inner.domain(), outer.codomain_dim(), std::move(images),
                  outer.name() + "∘" + inner.name());
}

OpMap linear_combination(cplx a, const OpMap& f, cplx b, const OpMap& g) {
  if (f.domain().ambient_dim() != g.domain().ambient_dim() ||
      f.domain().dim() != g.domain().dim() || f.codomain_dim() != g.codomain_dim()) {
    throw Error("linear_combination: maps have different shapes");
  }
  for (std::size_t i = 0; i < f.domain().dim(); ++i) {
    if (!approx_equal(f.domain().basis()[i], g.domain().basis()[i], 0.0)) {
      throw Error("linear_combination: maps have different domain bases");
    }
  }
  std::vector<CMat> images;
  for (std::size_t i = 0; i < f.images().size(); ++i) images.push_back(a * f.images()[i] + b * g.images()[i]);
  return make_map(f.domain(), f.codomain_dim(), std::move(images), "lin(" + f.name() + "," + g.name() + ")");
}

OpMap restrict_map(const OpMap& f, const OpSpace& domain, const Tolerances& tol) {
  std::vector<CMat> images;
  for (const auto& b : domain.basis()) images.push_back(f.apply(b, tol));
  return make_map(domain, f.codomain_dim(), std::move(images), f.name() + "|" + domain.name());
}

OpSpace range_space(const OpMap& f, const Tolerances& tol) {
  return span_of(f.codomain_dim(), f.images(), "ran(" + f.name() + ")", tol);
}

double idempotent_residual(const OpMap& f, const Tolerances& tol) {
  if (f.codomain_dim() != f.domain().ambient_dim()) {
    throw Error("idempotent_residual(" + f.name() + "): not an endomap");
  }
  double r = 0.0;
  for (const auto& y : f.onb_images()) r = std::max(r, max_abs_diff(f.apply(y, tol), y));
  return r;
}

// ---------------------------------------------------------------------------
// Norm search.

namespace {

// log ||y||_p and the gradient of log ||y||_p (w.r.t. the real HS inner
// product) for p a power of two >= 4. Powers are renormalized by their trace
// so large p does not underflow.
struct SchattenLog {
  double value = -std::numeric_limits<double>::infinity();
  CMat grad;
};

SchattenLog schatten_log(const CMat& y, double p) {
  SchattenLog out;
  const double s = hs_norm(y);
  if (s == 0.0) {
    out.grad = CMat(y.rows(), y.cols());
    return out;
  }
  const CMat yn = (1.0 / s) * y;
  CMat zc = yn.adjoint() * yn;  // trace 1
  double lz = 0.0;
  CMat wc = CMat::identity(zc.rows());
  double lw = 0.0;
  const int steps = static_cast<int>(std::lround(std::log2(p))) - 1;  // p/2 = 2^steps
  for (int j = 0; j < steps; ++j) {
    // wc accumulates z^(2^0 + ... + 2^(steps-1)) = z^(p/2 - 1).
    wc = wc * zc;
    const double tw = wc.trace().real();
    wc *= 1.0 / tw;
    lw += lz + std::log(tw);
    zc = zc * zc;
    const double tz = zc.trace().real();
    zc *= 1.0 / tz;
    lz = 2.0 * lz + std::log(tz);
  }
  const double log_t = lz;  // zc has trace 1 after normalization
  out.value = std::log(s) + log_t / p;
  out.grad = std::exp(lw - log_t) / s * (yn * wc);
  return out;
}

struct SearchProblem {
  const OpMap& phi;
  std::size_t k;
  std::size_t n, m, d;

  CMat build(const std::vector<cplx>& c, bool image) const {
    const std::size_t sz = image ? m : n;
    const auto& src = image ? phi.onb_images() : phi.domain().onb();
    CMat r(k * sz, k * sz);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        CMat blk(sz, sz);
        for (std::size_t b = 0; b < d; ++b) {
          const cplx cij = c[(i * k + j) * d + b];
          if (cij != cplx{0.0, 0.0}) blk += cij * src[b];
        }
        r.set_block(i * sz, j * sz, blk);
      }
    return r;
  }

  void pull_back(const CMat& g, bool image, double scale, std::vector<cplx>& out) const {
    const std::size_t sz = image ? m : n;
    const auto& src = image ? phi.onb_images() : phi.domain().onb();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const CMat gij = g.block(i * sz, j * sz, sz, sz);
        for (std::size_t b = 0; b < d; ++b) out[(i * k + j) * d + b] += scale * hs_inner(src[b], gij);
      }
  }

  std::vector<cplx> coefficients(const CMat& x) const {
    std::vector<cplx> c(k * k * d);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const CMat xij = x.block(i * n, j * n, n, n);
        for (std::size_t b = 0; b < d; ++b) c[(i * k + j) * d + b] = hs_inner(phi.domain().onb()[b], xij);
      }
    return c;
  }

  // log ||Y||_p - log ||X||_p and its coefficient gradient.
  double objective(const std::vector<cplx>& c, double p, std::vector<cplx>* grad) const {
    const SchattenLog sx = schatten_log(build(c, false), p);
    const SchattenLog sy = schatten_log(build(c, true), p);
    if (grad) {
      grad->assign(c.size(), cplx{0.0, 0.0});
      pull_back(sy.grad, true, 1.0, *grad);
      pull_back(sx.grad, false, -1.0, *grad);
    }
    return sy.value - sx.value;
  }

  double exact_ratio(const std::vector<cplx>& c) const {
    const double nx = op_norm(build(c, false));
    if (nx == 0.0) return 0.0;
    return op_norm(build(c, true)) / nx;
  }
};

double vec_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

void normalize(std::vector<cplx>& v) {
  const double s = vec_norm(v);
  if (s > 0.0)
    for (auto& z : v) z /= s;
}

}  // namespace

NormReport norm_lower(const OpMap& phi, std::size_t k, const Tolerances& tol,
                      const NormSearchOptions& opts) {
  tol.validate();
  if (k == 0) throw Error("norm_lower: level must be positive");
  const std::size_t n = phi.domain().ambient_dim();
  const std::size_t m = phi.codomain_dim();
  if (k * std::max(n, m) > kAmplifySizeCap) {
    throw Error("norm_lower(" + phi.name() + "): level " + std::to_string(k) +
                " exceeds the size cap");
  }
  NormReport rep;
  rep.level = k;
  rep.witness = CMat(k * n, k * n);
  const std::size_t d = phi.domain().dim();
  if (d == 0) {
    rep.converged = true;
    return rep;
  }
  const SearchProblem prob{phi, k, n, m, d};

  std::vector<std::vector<cplx>> starts;
  for (const auto& w : opts.warm_starts) {
    if (w.rows() == k * n && w.cols() == k * n) starts.push_back(prob.coefficients(w));
  }
  if (phi.domain().contains(CMat::identity(n), tol)) {
    starts.push_back(prob.coefficients(CMat::identity(k * n)));
  }
  const std::uint64_t level_seed = derive_seed(tol.seed, 0x1e7e1 + k);
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(level_seed, static_cast<std::uint64_t>(r)));
    std::vector<cplx> c(k * k * d);
    for (auto& z : c) z = gaussian_cplx(rng);
    starts.push_back(std::move(c));
  }

  double best = -1.0;
  std::vector<cplx> best_c;
  std::vector<double> finals;
  for (std::size_t si = 0; si < starts.size(); ++si) {
    std::vector<cplx> c = starts[si];
    normalize(c);
    if (vec_norm(c) == 0.0) continue;
    double start_best = prob.exact_ratio(c);
    std::vector<cplx> start_best_c = c;
    for (double p : opts.schedule) {
      std::vector<cplx> g;
      double f = prob.objective(c, p, &g);
      if (!std::isfinite(f)) break;
      double alpha = 0.5;
      for (int step = 0; step < opts.steps_per_stage && alpha > 1e-9; ++step) {
        const double gn = vec_norm(g);
        if (gn < 1e-14) break;
        std::vector<cplx> trial(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) trial[i] = c[i] + (alpha / gn) * g[i];
        normalize(trial);
        std::vector<cplx> tg;
        const double ft = prob.objective(trial, p, &tg);
        if (ft > f) {
          const bool small = ft - f < 1e-12;
          c = std::move(trial);
          g = std::move(tg);
          f = ft;
          alpha = std::min(1.0, alpha * 1.25);
          if (small) break;
        } else {
          alpha *= 0.5;
        }
      }
      const double r = prob.exact_ratio(c);
      if (r > start_best) {
        start_best = r;
        start_best_c = c;
      }
    }
    finals.push_back(start_best);
    if (start_best > best) {
      best = start_best;
      best_c = start_best_c;
    }
  }
  rep.restarts_used = static_cast<int>(starts.size());
  if (best_c.empty()) return rep;
  CMat x = prob.build(best_c, false);
  const double nx = op_norm(x);
  rep.witness = (1.0 / nx) * x;
  rep.lower_bound = op_norm(prob.build(best_c, true)) / nx;
  int agree = 0;
  for (double f : finals)
    if (f >= rep.lower_bound - tol.eps_norm * std::max(1.0, rep.lower_bound)) ++agree;
  rep.converged = agree >= 2;
  return rep;
}

std::vector<NormReport> norm_lower_levels(const OpMap& phi, std::size_t kmax,
                                          const Tolerances& tol,
                                          const NormSearchOptions& opts) {
  std::vector<NormReport> out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    NormSearchOptions o = opts;
    if (!out.empty()) {
      const CMat& w = out.back().witness;
      o.warm_starts.push_back(direct_sum(w, CMat(phi.domain().ambient_dim(), phi.domain().ambient_dim())));
    }
    NormReport r = norm_lower(phi, k, tol, o);
    if (!out.empty() && r.lower_bound < out.back().lower_bound) {
      // The padded witness is a start, so this only happens through rounding.
      r.lower_bound = std::max(r.lower_bound, out.back().lower_bound);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Positivity.

ChoiReport choi_cp_check(const OpMap& phi, const Tolerances& tol) {
  const std::size_t n = phi.domain().ambient_dim();
  if (phi.domain().dim() != n * n) {
    throw Error("choi_cp_check(" + phi.name() + "): domain is not all of M_" + std::to_string(n));
  }
  const std::size_t m = phi.codomain_dim();
  ChoiReport r;
  r.choi = CMat(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.choi.set_block(i * m, j * m, phi.apply(CMat::unit(n, i, j), tol));
  r.is_cp = is_psd(r.choi, tol);
  r.is_contractive_cp = r.is_cp && op_norm(phi.apply(CMat::identity(n), tol)) <= 1.0 + tol.eps_norm;
  return r;
}

OpMap extend_by_projection(const OpMap& phi, const Tolerances& tol) {
  const std::size_t n = phi.domain().ambient_dim();
  std::vector<CMat> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis.push_back(CMat::unit(n, i, j));
  OpSpace full = make_space(n, std::move(basis), "M" + std::to_string(n), tol);
  return map_from_function(
      std::move(full), phi.codomain_dim(),
      [&](const CMat& x) { return phi.apply(phi.domain().project(x), tol); }, phi.name() + "~");
}

OpMap unital_extension(const OpMap& phi, const Tolerances& tol) {
  const std::size_t n = phi.domain().ambient_dim();
  const std::size_t m = phi.codomain_dim();
  const CMat id = CMat::identity(n);
  if (phi.domain().contains(id, tol)) {
    if (!approx_equal(phi.apply(id, tol), CMat::identity(m), tol.eps_eq)) {
      throw Error("unital_extension(" + phi.name() + "): domain is unital but phi(1) != 1");
    }
    return phi;
  }
  const OpSpace u = unitize(phi.domain(), tol);
  std::vector<CMat> images = phi.images();
  images.push_back(CMat::identity(m));
  return make_map(u, m, std::move(images), phi.name() + "^1");
}

std::vector<std::pair<std::size_t, CMat>> sample_accretive(const OpSpace& s, int count,
                                                           std::size_t max_level,
                                                           const Tolerances& tol) {
  std::vector<std::pair<std::size_t, CMat>> out;
  const std::size_t n = s.ambient_dim();
  if (s.dim() == 0) return out;
  const bool unital = s.contains(CMat::identity(n), tol);
  for (int t = 0; t < count; ++t) {
    const std::size_t k = 1 + static_cast<std::size_t>(t) % max_level;
    Rng rng(derive_seed(tol.seed, 0xacc0000 + static_cast<std::uint64_t>(t)));
    CMat g(k * n, k * n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        CMat blk(n, n);
        for (const auto& q : s.onb()) blk += gaussian_cplx(rng) * q;
        g.set_block(i * n, j * n, blk);
      }
    if (unital) {
      const double shift = std::max(0.0, -min_eigenvalue(g.re()));
      out.emplace_back(k, g + shift * CMat::identity(k * n));
      continue;
    }
    // Dykstra between M_k(S) and the accretive cone, started at g.
    auto proj_space = [&](const CMat& y) {
      CMat r(k * n, k * n);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) r.set_block(i * n, j * n, s.project(y.block(i * n, j * n, n, n)));
      return r;
    };
    CMat x = g;
    CMat p(k * n, k * n), q(k * n, k * n);
    for (int it = 0; it < 200; ++it) {
      const CMat yv = x + p;
      const CMat y = psd_part(yv.re()) + cplx{0.0, 1.0} * yv.im();
      p = x + p - y;
      const CMat xn = proj_space(y + q);
      q = y + q - xn;
      x = xn;
    }
    const double nx = op_norm(x);
    if (nx < 1e-6 * op_norm(g)) continue;
    if (min_eigenvalue(x.re()) < -tol.eps_psd * std::max(1.0, nx)) continue;
    out.emplace_back(k, x);
  }
  return out;
}

RcpReport rcp_check(const OpMap& phi, const Tolerances& tol, const Certificate* unital_certificate,
                    const RcpOptions& opts) {
  RcpReport rep;
  const std::size_t m = phi.codomain_dim();

  rep.sampled_accretive = true;
  for (const auto& [k, x] : sample_accretive(phi.domain(), opts.samples, opts.max_sample_level, tol)) {
    const CMat y = phi.apply_amplified(x, k, tol);
    if (min_eigenvalue(y.re()) < -tol.eps_psd * std::max(1.0, op_norm(x))) {
      rep.sampled_accretive = false;
      break;
    }
  }

  OpMap ext;
  try {
    ext = unital_extension(phi, tol);
  } catch (const Error& e) {
    rep.note = e.what();
    return rep;
  }
  const std::size_t level = std::min(m, opts.max_norm_level);
  rep.unital_lower = norm_lower(ext, level, tol, opts.search).lower_bound;
  if (unital_certificate) {
    const auto chk = check_certificate(*unital_certificate, ext, tol);
    rep.certificate_valid = chk.valid && chk.certified_upper <= 1.0 + tol.eps_norm;
    if (!chk.valid) rep.note = "certificate invalid: " + chk.failure;
  } else {
    rep.note = "no certificate for the unital extension";
  }
  rep.unital_route = rep.certificate_valid && rep.unital_lower <= 1.0 + tol.eps_norm;
  return rep;
}

}  // namespace opalg
