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

#include "opalg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opalg {

namespace {

constexpr int kMaxSweeps = 80;

// Unitary 2x2 rotation U (acting on coordinates p, q) with U^* H U diagonal
// for H = [[a, c], [conj(c), b]], a and b real.
struct Rotation {
  cplx pp, pq, qp, qq;
};

Rotation jacobi_rotation(double a, double b, cplx c) {
  const double r = std::abs(c);
  const cplx phase = c / r;  // e^{i phi}
  const double theta = (b - a) / (2.0 * r);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double cs = 1.0 / std::sqrt(t * t + 1.0);
  const double sn = t * cs;
  const cplx d = std::conj(phase);  // e^{-i phi}
  return {cs, sn, -sn * d, cs * d};
}

}  // namespace

EigH eigh(const CMat& h0) {
  if (!h0.square()) throw Error("eigh: matrix not square");
  const std::size_t n = h0.rows();
  CMat h = h0.re();
  CMat v = CMat::identity(n);

  const double fro = hs_norm(h);
  const double target = 1e-30 * fro * fro;
  for (int sweep = 0; sweep < kMaxSweeps && fro > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (off <= target) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx c = h(p, q);
        const double ac = std::abs(c);
        if (ac == 0.0) continue;
        const double a = h(p, p).real();
        const double b = h(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && ac < 1e-18 * (std::abs(a) + std::abs(b))) {
          h(p, q) = h(q, p) = 0.0;
          continue;
        }
        const Rotation u = jacobi_rotation(a, b, c);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx hp = h(k, p), hq = h(k, q);
          h(k, p) = hp * u.pp + hq * u.qp;
          h(k, q) = hp * u.pq + hq * u.qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx hp = h(p, k), hq = h(q, k);
          h(p, k) = std::conj(u.pp) * hp + std::conj(u.qp) * hq;
          h(q, k) = std::conj(u.pq) * hp + std::conj(u.qq) * hq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vp = v(k, p), vq = v(k, q);
          v(k, p) = vp * u.pp + vq * u.qp;
          v(k, q) = vp * u.pq + vq * u.qq;
        }
        h(p, q) = h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return h(i, i).real() < h(j, j).real(); });
  EigH out;
  out.values.resize(n);
  out.vectors = CMat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = h(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Svd svd(const CMat& a) {
  if (a.rows() < a.cols()) {
    Svd t = svd(a.adjoint());
    return {std::move(t.v), std::move(t.s), std::move(t.u)};
  }
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Column-major working copies.
  std::vector<cplx> w(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) w[j * m + i] = a(i, j);
  std::vector<cplx> v(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1.0;

  auto col = [&](std::size_t j) { return w.data() + j * m; };
  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(col(j)[i]);
    norms[j] = s;
  }

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = norms[p];
        const double beta = norms[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        cplx gamma = 0.0;
        const cplx* wp = col(p);
        const cplx* wq = col(q);
        for (std::size_t i = 0; i < m; ++i) gamma += std::conj(wp[i]) * wq[i];
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation u = jacobi_rotation(alpha, beta, gamma);
        cplx* mp = col(p);
        cplx* mq = col(q);
        double np = 0.0, nq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const cplx xp = mp[i], xq = mq[i];
          mp[i] = xp * u.pp + xq * u.qp;
          mq[i] = xp * u.pq + xq * u.qq;
          np += std::norm(mp[i]);
          nq += std::norm(mq[i]);
        }
        norms[p] = np;
        norms[q] = nq;
        cplx* vp = v.data() + p * n;
        cplx* vq = v.data() + q * n;
        for (std::size_t i = 0; i < n; ++i) {
          const cplx xp = vp[i], xq = vq[i];
          vp[i] = xp * u.pp + xq * u.qp;
          vq[i] = xp * u.pq + xq * u.qq;
        }
      }
    }
    if (!rotated) break;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(col(j)[i]);
    norms[j] = s;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });
  Svd out;
  out.s.resize(n);
  out.u = CMat(m, n);
  out.v = CMat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    const double sigma = std::sqrt(norms[j]);
    out.s[k] = sigma;
    if (sigma > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, k) = col(j)[i] / sigma;
    }
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v[j * n + i];
  }
  return out;
}

double op_norm(const CMat& x) {
  if (x.empty()) return 0.0;
  const Svd d = svd(x);
  return d.s.empty() ? 0.0 : d.s.front();
}

bool is_hermitian(const CMat& h, double eps) {
  return h.square() && max_abs_diff(h, h.adjoint()) <= eps;
}

double min_eigenvalue(const CMat& h) {
  if (!h.square()) throw Error("min_eigenvalue: matrix not square");
  if (h.rows() == 0) return 0.0;
  return eigh(h).values.front();
}

bool is_psd(const CMat& h, const Tolerances& tol) {
  if (!h.square()) throw Error("is_psd: matrix not square");
  if (!is_hermitian(h, tol.eps_eq)) return false;
  return h.rows() == 0 || min_eigenvalue(h) >= -tol.eps_psd;
}

bool is_projection(const CMat& q, double eps) {
  return q.square() && is_hermitian(q, eps) && approx_equal(q * q, q, eps);
}

namespace {

// Sum of |lambda| v v^* over eigenpairs with the requested sign.
CMat spectral_part(const EigH& e, bool positive) {
  const std::size_t n = e.vectors.rows();
  CMat r(n, n);
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    const double lam = e.values[k];
    if (positive ? lam <= 0.0 : lam >= 0.0) continue;
    const double w = std::abs(lam);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = w * e.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vi * std::conj(e.vectors(j, k));
    }
  }
  return r;
}

}  // namespace

HermDecomposition herm_decompose(const CMat& x) {
  if (!x.square()) throw Error("herm_decompose: matrix not square");
  HermDecomposition d;
  d.a = x.re();
  d.b = x.im();
  const EigH ea = eigh(d.a);
  const EigH eb = eigh(d.b);
  d.a_plus = spectral_part(ea, true);
  d.a_minus = spectral_part(ea, false);
  d.b_plus = spectral_part(eb, true);
  d.b_minus = spectral_part(eb, false);
  return d;
}

CMat psd_part(const CMat& h) {
  if (!h.square()) throw Error("psd_part: matrix not square");
  return spectral_part(eigh(h), true);
}

CMat clip_to_unit_ball(const CMat& x) {
  const Svd d = svd(x);
  if (d.s.empty() || d.s.front() <= 1.0) return x;
  // x - sum_{s_k > 1} (s_k - 1) u_k v_k^*
  CMat r = x;
  for (std::size_t k = 0; k < d.s.size() && d.s[k] > 1.0; ++k) {
    const double excess = d.s[k] - 1.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      const cplx ui = excess * d.u(i, k);
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) -= ui * std::conj(d.v(j, k));
    }
  }
  return r;
}

CMat tripotent_u(const CMat& x, const Tolerances& tol, double threshold) {
  const Svd d = svd(x);
  const double norm = d.s.empty() ? 0.0 : d.s.front();
  if (norm > 1.0 + tol.eps_norm) {
    throw Error("tripotent_u: argument has norm " + std::to_string(norm) + " > 1");
  }
  CMat w(x.rows(), x.cols());
  for (std::size_t k = 0; k < d.s.size() && d.s[k] >= 1.0 - threshold; ++k) {
    for (std::size_t i = 0; i < w.rows(); ++i)
      for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) += d.u(i, k) * std::conj(d.v(j, k));
  }
  return w;
}

CMat solve(const CMat& a0, const CMat& b0) {
  if (!a0.square() || a0.rows() != b0.rows()) throw Error("solve: shape mismatch");
  const std::size_t n = a0.rows();
  CMat a = a0;
  CMat b = b0;
  const double scale = std::max(a.max_abs(), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) <= 1e-14 * scale) throw Error("solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
  CMat x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      cplx s = b(ii, c);
      for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x(j, c);
      x(ii, c) = s / a(ii, ii);
    }
  }
  return x;
}

CMat column_span_basis(const CMat& cols, double eps_rel) {
  if (cols.cols() == 0) return CMat(cols.rows(), 0);
  const Svd d = svd(cols);
  const double smax = d.s.empty() ? 0.0 : d.s.front();
  std::size_t rank = 0;
  while (rank < d.s.size() && smax > 0.0 && d.s[rank] > eps_rel * smax) ++rank;
  return d.u.block(0, 0, cols.rows(), rank);
}

CMat support(std::span<const CMat> elems, Side side, const Tolerances& tol,
             std::optional<std::size_t> dim) {
  if (elems.empty()) {
    if (!dim) throw Error("support: empty list needs an explicit dimension");
    return CMat(*dim, *dim);
  }
  const std::size_t n = elems.front().rows();
  for (const auto& z : elems) {
    if (!z.square() || z.rows() != n) throw Error("support: mixed or non-square dimensions");
  }
  if (dim && *dim != n) throw Error("support: dimension mismatch");
  CMat stacked(n, n * elems.size());
  for (std::size_t k = 0; k < elems.size(); ++k) {
    stacked.set_block(0, k * n, side == Side::left ? elems[k] : elems[k].adjoint());
  }
  const CMat basis = column_span_basis(stacked, tol.eps_psd);
  return basis * basis.adjoint();
}

}  // namespace opalg
