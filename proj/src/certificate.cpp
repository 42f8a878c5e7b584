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

#include "opalg/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "opalg/linalg.hpp"

namespace opalg {

Certificate cert_compose(std::vector<Certificate> children, std::string label) {
  Certificate c;
  c.kind = Certificate::Kind::compose;
  c.children = std::move(children);
  c.label = std::move(label);
  return c;
}

Certificate cert_direct_sum(std::vector<Certificate> children, std::string label) {
  Certificate c;
  c.kind = Certificate::Kind::direct_sum;
  c.children = std::move(children);
  c.label = std::move(label);
  return c;
}

Certificate cert_tensor_id(std::size_t k, Certificate child, std::string label) {
  Certificate c;
  c.kind = Certificate::Kind::tensor_id;
  c.k = k;
  c.children.push_back(std::move(child));
  c.label = std::move(label);
  return c;
}

Certificate cert_conjugation(CMat a, CMat b, std::string label) {
  Certificate c;
  c.kind = Certificate::Kind::conjugation;
  c.a = std::move(a);
  c.b = std::move(b);
  c.label = std::move(label);
  return c;
}

Certificate cert_placement(std::vector<std::size_t> in_rows, std::vector<std::size_t> in_cols,
                           std::vector<std::size_t> out_rows,
                           std::vector<std::size_t> out_cols, std::vector<PlacementItem> items,
                           std::string label) {
  Certificate c;
  c.kind = Certificate::Kind::placement;
  c.in_rows = std::move(in_rows);
  c.in_cols = std::move(in_cols);
  c.out_rows = std::move(out_rows);
  c.out_cols = std::move(out_cols);
  c.items = std::move(items);
  c.label = std::move(label);
  return c;
}

Certificate cert_paulsen(std::size_t n_in, std::size_t n_out, Certificate child,
                         std::string label) {
  Certificate c;
  c.kind = Certificate::Kind::paulsen;
  c.n_in = n_in;
  c.n_out = n_out;
  c.children.push_back(std::move(child));
  c.label = std::move(label);
  return c;
}

Certificate cert_inclusion(std::string label) {
  Certificate c;
  c.kind = Certificate::Kind::inclusion;
  c.label = std::move(label);
  return c;
}

Certificate cert_cp(std::size_t n_in, std::size_t n_out, CMat choi, std::string label) {
  Certificate c;
  c.kind = Certificate::Kind::cp;
  c.n_in = n_in;
  c.n_out = n_out;
  c.choi = std::move(choi);
  c.label = std::move(label);
  return c;
}

std::string kind_name(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::compose: return "compose";
    case Certificate::Kind::direct_sum: return "direct_sum";
    case Certificate::Kind::tensor_id: return "tensor_id";
    case Certificate::Kind::conjugation: return "conjugation";
    case Certificate::Kind::placement: return "placement";
    case Certificate::Kind::paulsen: return "paulsen";
    case Certificate::Kind::inclusion: return "inclusion";
    case Certificate::Kind::cp: return "cp";
  }
  return "?";
}

Certificate::Kind kind_from_name(const std::string& s) {
  for (auto k : {Certificate::Kind::compose, Certificate::Kind::direct_sum,
                 Certificate::Kind::tensor_id, Certificate::Kind::conjugation,
                 Certificate::Kind::placement, Certificate::Kind::paulsen,
                 Certificate::Kind::inclusion, Certificate::Kind::cp}) {
    if (kind_name(k) == s) return k;
  }
  throw Error("unknown certificate kind '" + s + "'");
}

namespace {

std::size_t sum(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

std::size_t offset(const std::vector<std::size_t>& v, std::size_t idx) {
  return std::accumulate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), std::size_t{0});
}

}  // namespace

CMat evaluate(const Certificate& c, const CMat& x, const Tolerances& tol) {
  using K = Certificate::Kind;
  switch (c.kind) {
    case K::compose: {
      CMat y = x;
      for (const auto& ch : c.children) y = evaluate(ch, y, tol);
      return y;
    }
    case K::direct_sum: {
      std::vector<CMat> parts;
      for (const auto& ch : c.children) parts.push_back(evaluate(ch, x, tol));
      return direct_sum(parts);
    }
    case K::tensor_id: {
      if (c.children.size() != 1) throw Error("tensor_id: needs one child");
      if (c.k == 0 || x.rows() % c.k || x.cols() % c.k) throw Error("tensor_id: input not k-blocked");
      const std::size_t p = x.rows() / c.k, q = x.cols() / c.k;
      CMat out;
      std::size_t r = 0, s = 0;
      for (std::size_t i = 0; i < c.k; ++i)
        for (std::size_t j = 0; j < c.k; ++j) {
          const CMat y = evaluate(c.children[0], x.block(i * p, j * q, p, q), tol);
          if (out.empty() && r == 0) {
            r = y.rows();
            s = y.cols();
            out = CMat(c.k * r, c.k * s);
          }
          if (y.rows() != r || y.cols() != s) throw Error("tensor_id: ragged child output");
          out.set_block(i * r, j * s, y);
        }
      return out;
    }
    case K::conjugation:
      return c.a * x * c.b;
    case K::placement: {
      if (x.rows() != sum(c.in_rows) || x.cols() != sum(c.in_cols)) {
        throw Error("placement: input shape does not match the group sizes");
      }
      CMat y(sum(c.out_rows), sum(c.out_cols));
      for (const auto& it : c.items) {
        if (it.src_row >= c.in_rows.size() || it.src_col >= c.in_cols.size() ||
            it.dst_row >= c.out_rows.size() || it.dst_col >= c.out_cols.size()) {
          throw Error("placement: group index out of range");
        }
        if (c.in_rows[it.src_row] != c.out_rows[it.dst_row] ||
            c.in_cols[it.src_col] != c.out_cols[it.dst_col]) {
          throw Error("placement: block size mismatch");
        }
        y.set_block(offset(c.out_rows, it.dst_row), offset(c.out_cols, it.dst_col),
                    x.block(offset(c.in_rows, it.src_row), offset(c.in_cols, it.src_col),
                            c.in_rows[it.src_row], c.in_cols[it.src_col]));
      }
      return y;
    }
    case K::paulsen: {
      if (c.children.size() != 1) throw Error("paulsen: needs one child");
      const std::size_t n = c.n_in;
      if (x.rows() != 2 * n || x.cols() != 2 * n) throw Error("paulsen: input shape mismatch");
      const cplx s = x(0, 0), t = x(n, n);
      const double eps = tol.eps_eq * std::max(1.0, x.max_abs());
      if (max_abs_diff(x.block(0, 0, n, n), s * CMat::identity(n)) > eps ||
          max_abs_diff(x.block(n, n, n, n), t * CMat::identity(n)) > eps ||
          x.block(n, 0, n, n).max_abs() > eps) {
        throw Error("paulsen: input is not in U(X) form");
      }
      const CMat v = evaluate(c.children[0], x.block(0, n, n, n), tol);
      const std::size_t m = c.n_out;
      if (v.rows() != m || v.cols() != m) throw Error("paulsen: child output shape mismatch");
      CMat y(2 * m, 2 * m);
      y.set_block(0, 0, s * CMat::identity(m));
      y.set_block(m, m, t * CMat::identity(m));
      y.set_block(0, m, v);
      return y;
    }
    case K::inclusion:
      return x;
    case K::cp: {
      if (x.rows() != c.n_in || x.cols() != c.n_in) throw Error("cp: input shape mismatch");
      const std::size_t m = c.n_out;
      CMat y(m, m);
      for (std::size_t i = 0; i < c.n_in; ++i)
        for (std::size_t j = 0; j < c.n_in; ++j)
          if (x(i, j) != cplx{0.0, 0.0}) y += x(i, j) * c.choi.block(i * m, j * m, m, m);
      return y;
    }
  }
  throw Error("evaluate: unknown certificate kind");
}

namespace {

CertificateCheck fail(const std::string& path, const std::string& why) {
  CertificateCheck r;
  r.valid = false;
  r.certified_upper = std::numeric_limits<double>::infinity();
  r.failure = path + ": " + why;
  return r;
}

CertificateCheck ok(double bound) {
  CertificateCheck r;
  r.valid = true;
  r.certified_upper = bound;
  return r;
}

CertificateCheck check_node(const Certificate& c, const Tolerances& tol, const std::string& path) {
  using K = Certificate::Kind;
  const std::string here = path + "/" + kind_name(c.kind) + (c.label.empty() ? "" : "[" + c.label + "]");
  switch (c.kind) {
    case K::compose:
    case K::direct_sum: {
      if (c.children.empty()) return fail(here, "no children");
      double bound = c.kind == K::compose ? 1.0 : 0.0;
      for (std::size_t i = 0; i < c.children.size(); ++i) {
        const auto r = check_node(c.children[i], tol, here + "/" + std::to_string(i));
        if (!r.valid) return r;
        bound = c.kind == K::compose ? bound * r.certified_upper : std::max(bound, r.certified_upper);
      }
      return ok(bound);
    }
    case K::tensor_id: {
      if (c.children.size() != 1) return fail(here, "needs exactly one child");
      if (c.k == 0) return fail(here, "k must be positive");
      return check_node(c.children[0], tol, here + "/0");
    }
    case K::conjugation: {
      if (c.a.empty() || c.b.empty()) return fail(here, "missing matrices");
      const double bound = op_norm(c.a) * op_norm(c.b);
      if (bound > 1.0 + tol.eps_eq) {
        return fail(here, "||A||*||B|| = " + std::to_string(bound) + " exceeds 1");
      }
      return ok(bound);
    }
    case K::placement: {
      std::set<std::size_t> rows, cols;
      for (const auto& it : c.items) {
        if (it.src_row >= c.in_rows.size() || it.src_col >= c.in_cols.size() ||
            it.dst_row >= c.out_rows.size() || it.dst_col >= c.out_cols.size()) {
          return fail(here, "group index out of range");
        }
        if (c.in_rows[it.src_row] != c.out_rows[it.dst_row] ||
            c.in_cols[it.src_col] != c.out_cols[it.dst_col]) {
          return fail(here, "block size mismatch");
        }
        if (!rows.insert(it.dst_row).second) return fail(here, "destination row group repeated");
        if (!cols.insert(it.dst_col).second) return fail(here, "destination column group repeated");
      }
      return ok(c.items.empty() ? 0.0 : 1.0);
    }
    case K::paulsen: {
      if (c.children.size() != 1) return fail(here, "needs exactly one child");
      const auto r = check_node(c.children[0], tol, here + "/0");
      if (!r.valid) return r;
      if (r.certified_upper > 1.0 + tol.eps_eq) return fail(here, "corner map is not a complete contraction");
      return ok(1.0);
    }
    case K::inclusion:
      return ok(1.0);
    case K::cp: {
      const std::size_t sz = c.n_in * c.n_out;
      if (sz == 0 || c.choi.rows() != sz || c.choi.cols() != sz) return fail(here, "Choi matrix shape mismatch");
      if (!is_psd(c.choi, tol)) return fail(here, "Choi matrix is not positive semidefinite");
      CMat unit(c.n_out, c.n_out);
      for (std::size_t i = 0; i < c.n_in; ++i) unit += c.choi.block(i * c.n_out, i * c.n_out, c.n_out, c.n_out);
      const double bound = op_norm(unit);
      if (bound > 1.0 + tol.eps_norm) return fail(here, "||phi(1)|| = " + std::to_string(bound) + " exceeds 1");
      return ok(bound);
    }
  }
  return fail(here, "unknown kind");
}

}  // namespace

CertificateCheck check_primitives(const Certificate& c, const Tolerances& tol) {
  return check_node(c, tol, "root");
}

CertificateCheck check_certificate(const Certificate& c, const OpMap& phi, const Tolerances& tol) {
  CertificateCheck r = check_primitives(c, tol);
  if (!r.valid) return r;
  const auto& onb = phi.domain().onb();
  for (std::size_t k = 0; k < onb.size(); ++k) {
    CMat y;
    try {
      y = evaluate(c, onb[k], tol);
    } catch (const Error& e) {
      return fail("root", std::string("evaluation failed on basis element ") + std::to_string(k) + ": " + e.what());
    }
    const double diff = max_abs_diff(y, phi.onb_images()[k]);
    if (!(diff <= tol.eps_eq)) {
      return fail("root", "composite differs from " + phi.name() + " on basis element " +
                              std::to_string(k) + " (max deviation " + std::to_string(diff) + ")");
    }
  }
  return r;
}

}  // namespace opalg
