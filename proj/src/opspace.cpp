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

#include "opalg/opspace.hpp"

#include <algorithm>
#include <cmath>

#include "opalg/linalg.hpp"
#include "opalg/random.hpp"

namespace opalg {

namespace {

// Incremental HS Gram-Schmidt. Keeps the original matrices that enlarged
// the span.
class SpanBuilder {
 public:
  explicit SpanBuilder(double rel_eps) : rel_eps_(rel_eps) {}

  bool add(const CMat& m) {
    const double nm = hs_norm(m);
    if (nm == 0.0) return false;
    CMat v = m;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : onb_) v -= hs_inner(q, v) * q;
    const double r = hs_norm(v);
    if (r <= rel_eps_ * nm) return false;
    v *= 1.0 / r;
    onb_.push_back(std::move(v));
    kept_.push_back(m);
    return true;
  }

  const std::vector<CMat>& kept() const { return kept_; }
  const std::vector<CMat>& onb() const { return onb_; }

 private:
  double rel_eps_;
  std::vector<CMat> onb_;
  std::vector<CMat> kept_;
};

// Span test threshold used when deciding whether a candidate adds a
// direction. Looser than eps_eq so products with rounding noise do not
// inflate dimensions.
constexpr double kSpanGrowthEps = 1e-7;

}  // namespace

std::vector<cplx> OpSpace::onb_coefficients(const CMat& x) const {
  std::vector<cplx> c(onb_.size());
  for (std::size_t k = 0; k < onb_.size(); ++k) c[k] = hs_inner(onb_[k], x);
  return c;
}

std::vector<cplx> OpSpace::basis_coefficients(const CMat& x) const {
  const auto c = onb_coefficients(x);
  std::vector<cplx> out(basis_.size(), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[k] * onb_in_basis_[k][i];
  return out;
}

CMat OpSpace::project(const CMat& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw Error("OpSpace::project: shape mismatch");
  CMat p(n_, n_);
  for (const auto& q : onb_) p += hs_inner(q, x) * q;
  return p;
}

double OpSpace::residual(const CMat& x) const { return hs_norm(x - project(x)); }

bool OpSpace::contains(const CMat& x, const Tolerances& tol) const {
  if (x.rows() != n_ || x.cols() != n_) return false;
  return residual(x) < tol.eps_eq * std::max(1.0, hs_norm(x));
}

OpSpace OpSpace::renamed(std::string name) const {
  OpSpace s = *this;
  s.name_ = std::move(name);
  return s;
}

OpSpace make_space(std::size_t ambient_dim, std::vector<CMat> basis, std::string name,
                   const Tolerances& tol) {
  if (ambient_dim == 0) throw Error("make_space: ambient dimension must be positive");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& b = basis[i];
    if (b.rows() != ambient_dim || b.cols() != ambient_dim) {
      throw Error("make_space(" + name + "): basis element " + std::to_string(i) +
                  " is not " + std::to_string(ambient_dim) + "x" +
                  std::to_string(ambient_dim));
    }
    if (!b.all_finite()) throw Error("make_space(" + name + "): non-finite entry");
  }
  const std::size_t d = basis.size();
  if (d > ambient_dim * ambient_dim) throw Error("make_space(" + name + "): dependent basis");

  std::vector<double> norms(d);
  for (std::size_t i = 0; i < d; ++i) {
    norms[i] = hs_norm(basis[i]);
    if (norms[i] == 0.0) throw Error("make_space(" + name + "): dependent basis (zero element)");
  }
  if (d > 0) {
    CMat g(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        g(i, j) = hs_inner(basis[i], basis[j]) / (norms[i] * norms[j]);
    if (min_eigenvalue(g) < tol.eps_psd) throw Error("make_space(" + name + "): dependent basis");
  }

  OpSpace s;
  s.name_ = std::move(name);
  s.n_ = ambient_dim;
  for (std::size_t k = 0; k < d; ++k) {
    CMat v = basis[k];
    std::vector<cplx> coeff(d, cplx{0.0, 0.0});
    coeff[k] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        const cplx c = hs_inner(s.onb_[j], v);
        v -= c * s.onb_[j];
        for (std::size_t i = 0; i < d; ++i) coeff[i] -= c * s.onb_in_basis_[j][i];
      }
    }
    const double r = hs_norm(v);
    v *= 1.0 / r;
    for (auto& c : coeff) c /= r;
    s.onb_.push_back(std::move(v));
    s.onb_in_basis_.push_back(std::move(coeff));
  }
  s.basis_ = std::move(basis);
  return s;
}

OpSpace span_of(std::size_t ambient_dim, const std::vector<CMat>& mats, std::string name,
                const Tolerances& tol) {
  SpanBuilder b(kSpanGrowthEps);
  double scale = 0.0;
  for (const auto& m : mats) {
    if (m.rows() != ambient_dim || m.cols() != ambient_dim) {
      throw Error("span_of(" + name + "): shape mismatch");
    }
    scale = std::max(scale, hs_norm(m));
  }
  // Rounding residue of cancelled inputs is not a direction.
  for (const auto& m : mats)
    if (hs_norm(m) > tol.eps_eq * scale) b.add(m);
  return make_space(ambient_dim, b.kept(), std::move(name), tol);
}

StructureFlags structure_flags(const OpSpace& s, const Tolerances& tol) {
  StructureFlags f;
  f.is_subalgebra = true;
  f.is_jordan_subalgebra = true;
  f.square_zero = true;
  f.is_selfadjoint = true;
  const auto& q = s.onb();
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (f.is_selfadjoint && !s.contains(q[i].adjoint(), tol)) f.is_selfadjoint = false;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const CMat xy = q[i] * q[j];
      if (hs_norm(xy) >= tol.eps_eq) f.square_zero = false;
      if (f.is_subalgebra && !s.contains(xy, tol)) f.is_subalgebra = false;
      if (j >= i && f.is_jordan_subalgebra) {
        const CMat sym = 0.5 * (xy + q[j] * q[i]);
        if (!s.contains(sym, tol)) f.is_jordan_subalgebra = false;
      }
    }
  }
  f.is_unital = s.contains(CMat::identity(s.ambient_dim()), tol);
  return f;
}

OpSpace amplify_space(const OpSpace& s, std::size_t k, std::size_t size_cap) {
  if (k == 0) throw Error("amplify_space: level must be positive");
  if (k * s.ambient_dim() > size_cap) {
    throw Error("amplify_space: size " + std::to_string(k * s.ambient_dim()) +
                " exceeds cap " + std::to_string(size_cap));
  }
  if (k == 1) return s;
  std::vector<CMat> basis;
  basis.reserve(k * k * s.dim());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& b : s.basis()) basis.push_back(block_embed(b, k, i, j));
  return make_space(k * s.ambient_dim(), std::move(basis),
                    "M" + std::to_string(k) + "(" + s.name() + ")");
}

OpSpace unitize(const OpSpace& s, const Tolerances& tol) {
  const CMat id = CMat::identity(s.ambient_dim());
  if (s.contains(id, tol)) return s;
  std::vector<CMat> basis = s.basis();
  basis.push_back(id);
  return make_space(s.ambient_dim(), std::move(basis), s.name() + "+1", tol);
}

bool is_subspace(const OpSpace& a, const OpSpace& b, const Tolerances& tol) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  return std::all_of(a.onb().begin(), a.onb().end(),
                     [&](const CMat& x) { return b.contains(x, tol); });
}

OpSpace generated_algebra(const OpSpace& s, const Tolerances& tol) {
  SpanBuilder b(kSpanGrowthEps);
  for (const auto& x : s.basis()) b.add(x);
  std::size_t done = 0;
  // Every new element is multiplied against the whole current span on both
  // sides, so products among old elements are never recomputed.
  while (done < b.onb().size()) {
    const std::size_t end = b.onb().size();
    for (std::size_t i = done; i < end; ++i) {
      for (std::size_t j = 0; j < end; ++j) {
        const CMat x = b.onb()[i];
        const CMat y = b.onb()[j];
        b.add(x * y);
        if (i != j) b.add(y * x);
      }
    }
    done = end;
  }
  return make_space(s.ambient_dim(), b.kept(), "alg(" + s.name() + ")", tol);
}

bool is_hereditary(const OpSpace& d, const OpSpace& a, const Tolerances& tol) {
  for (const auto& x : d.onb())
    for (const auto& m : a.onb()) {
      const CMat xm = x * m;
      for (const auto& y : d.onb())
        if (!d.contains(xm * y, tol)) return false;
    }
  return true;
}

CMat paulsen_corner(const CMat& x) {
  if (!x.square()) throw Error("paulsen_corner: non-square input");
  CMat r(2 * x.rows(), 2 * x.rows());
  r.set_block(0, x.rows(), x);
  return r;
}

OpSpace paulsen_space(const OpSpace& x) {
  const std::size_t n = x.ambient_dim();
  std::vector<CMat> basis;
  basis.push_back(direct_sum(CMat::identity(n), CMat(n, n)));
  basis.push_back(direct_sum(CMat(n, n), CMat::identity(n)));
  for (const auto& b : x.basis()) basis.push_back(paulsen_corner(b));
  return make_space(2 * n, std::move(basis), "U(" + x.name() + ")");
}

namespace {

CMat project_accretive(const CMat& x) {
  const CMat h = x.re();
  const CMat k = x.im();
  return psd_part(h) + cplx{0.0, 1.0} * k;
}

}  // namespace

OpSpace selfadjoint_part(const OpSpace& s, const Tolerances& tol) {
  // x = sum (al_k + i be_k) q_k lies in S ∩ S^* iff (1 - P_S)(x^*) = 0. The
  // condition is real-linear in (al, be); solve it as a real nullspace.
  const std::size_t n = s.ambient_dim();
  const std::size_t d = s.dim();
  if (d == 0) return s;
  const cplx iu{0.0, 1.0};
  CMat m(2 * n * n, 2 * d);
  for (std::size_t k = 0; k < 2 * d; ++k) {
    const CMat x = (k < d ? cplx{1.0, 0.0} : iu) * s.onb()[k % d];
    const CMat r = x.adjoint() - s.project(x.adjoint());
    auto rd = r.data();
    for (std::size_t t = 0; t < n * n; ++t) {
      m(t, k) = rd[t].real();
      m(n * n + t, k) = rd[t].imag();
    }
  }
  const CMat gram = m.adjoint() * m;
  const EigH e = eigh(gram);
  std::vector<CMat> herm;
  const double scale = std::max(1.0, e.values.back());
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    if (e.values[k] > tol.eps_psd * scale) continue;
    CMat x(n, n);
    for (std::size_t j = 0; j < d; ++j) {
      const cplx c{e.vectors(j, k).real(), e.vectors(j + d, k).real()};
      x += c * s.onb()[j];
    }
    herm.push_back(x.re());
    herm.push_back(x.im());
  }
  return span_of(n, herm, "sa(" + s.name() + ")", tol);
}

CMat good_part_unit(const OpSpace& s, const Tolerances& tol) {
  if (!structure_flags(s, tol).is_subalgebra) {
    throw Error("good_part: " + s.name() + " is not a subalgebra");
  }
  const OpSpace b = selfadjoint_part(s, tol);
  return support(b.basis(), Side::left, tol, s.ambient_dim());
}

OpSpace good_part(const OpSpace& s, const Tolerances& tol) {
  const CMat e = good_part_unit(s, tol);
  std::vector<CMat> parts;
  for (const auto& q : s.onb()) parts.push_back(e * q * e);
  return span_of(s.ambient_dim(), parts, "good(" + s.name() + ")", tol);
}

std::vector<CMat> accretive_search(const OpSpace& s, const Tolerances& tol,
                                   const AccretiveSearchOptions& opts) {
  const std::size_t n = s.ambient_dim();
  const bool unital = s.contains(CMat::identity(n), tol);
  Rng rng(derive_seed(tol.seed, 0x600d));
  SpanBuilder found(kSpanGrowthEps);
  int failures = 0;

  while (found.onb().size() < s.dim() && failures < opts.max_failures) {
    CMat g(n, n);
    for (const auto& q : s.onb()) g += gaussian_cplx(rng) * q;
    for (const auto& f : found.onb()) g -= hs_inner(f, g) * f;
    const double gn = hs_norm(g);
    if (gn < kSpanGrowthEps) break;
    g *= 1.0 / gn;

    bool accepted = false;
    if (unital) {
      // 1 + t g is accretive once t ||g|| <= 1.
      accepted = found.add(CMat::identity(n) + (0.5 / op_norm(g)) * g);
    } else {
      for (double sign : {1.0, -1.0}) {
        const CMat dir = sign * g;
        auto to_affine = [&](const CMat& y) {
          CMat z = s.project(y);
          return z + (1.0 - hs_inner(dir, z).real()) * dir;
        };
        CMat x = dir;
        CMat p(n, n), q(n, n);
        for (int it = 0; it < opts.dykstra_iterations; ++it) {
          const CMat y = project_accretive(x + p);
          p = x + p - y;
          const CMat xn = to_affine(y + q);
          q = y + q - xn;
          const double step = hs_norm(xn - x);
          x = xn;
          if (step < 1e-13 && it > 8) break;
        }
        if (min_eigenvalue(x.re()) >= -tol.eps_psd * std::max(1.0, op_norm(x))) {
          accepted = found.add(x);
          if (accepted) break;
        }
      }
    }
    failures = accepted ? 0 : failures + 1;
  }
  return found.kept();
}

}  // namespace opalg
