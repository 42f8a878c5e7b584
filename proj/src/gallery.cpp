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

#include "opalg/gallery.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "opalg/linalg.hpp"

namespace opalg {

namespace {

// One-based matrix unit.
CMat E(std::size_t n, std::size_t i, std::size_t j) { return CMat::unit(n, i - 1, j - 1); }

OpSpace full_algebra(std::size_t n, const std::string& name) {
  std::vector<CMat> b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b.push_back(CMat::unit(n, i, j));
  return make_space(n, std::move(b), name);
}

// Rows of I_{kn} belonging to the listed (zero-based) blocks.
CMat block_rows(std::size_t k, std::size_t n, const std::vector<std::size_t>& blocks) {
  CMat s(blocks.size() * n, k * n);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t i = 0; i < n; ++i) s(b * n + i, blocks[b] * n + i) = 1.0;
  return s;
}

CMat block_projection(std::size_t k, std::size_t n, std::size_t i) {
  const CMat s = block_rows(k, n, {i});
  return s.transpose() * s;
}

Certificate compress(const CMat& rows, std::string label = "") {
  return cert_conjugation(rows, rows.transpose(), std::move(label));
}

// x -> (x + y) / 2 on a pair of m x m outputs given as a direct sum.
Certificate average_pair(std::size_t m) {
  CMat r(m, 2 * m);
  r.set_block(0, 0, CMat::identity(m));
  r.set_block(0, m, CMat::identity(m));
  r *= 1.0 / std::sqrt(2.0);
  return cert_conjugation(r, r.transpose(), "average");
}

// x -> (x + sign * u x u^*) / 2 for a unitary u.
Certificate unitary_average(const CMat& u, double sign) {
  return cert_compose(
      {cert_direct_sum({cert_inclusion(), cert_conjugation(u, sign * u.adjoint())}),
       average_pair(u.rows())});
}

struct Term {
  std::size_t row, col;  // zero-based entry
  double coeff;
};

// x -> (sum_t coeff_t x_{row_t col_t}) * m for sum |coeff| <= 1, ||m|| <= 1.
Certificate functional_times(std::size_t n, const std::vector<Term>& terms, const CMat& m) {
  const std::size_t k = terms.size();
  CMat a(1, k * n), b(k * n, 1);
  std::vector<Certificate> copies(k, cert_inclusion());
  for (std::size_t t = 0; t < k; ++t) {
    const double s = std::sqrt(std::abs(terms[t].coeff));
    a(0, t * n + terms[t].row) = s;
    b(t * n + terms[t].col, 0) = terms[t].coeff < 0 ? -s : s;
  }
  std::vector<Certificate> outs(m.rows(), cert_inclusion());
  return cert_compose({cert_direct_sum(copies), cert_conjugation(a, b, "functional"),
                       cert_direct_sum(outs), cert_conjugation(CMat::identity(m.rows()), m)});
}

Expectation expect(std::string field, std::string op, FieldValue value, double tol, Provenance prov,
                   std::string source) {
  Expectation e;
  e.field = std::move(field);
  e.op = std::move(op);
  e.value = std::move(value);
  e.tolerance = tol;
  e.provenance = prov;
  e.source = std::move(source);
  return e;
}

constexpr auto kPub = Provenance::published;
constexpr auto kDer = Provenance::derived;
constexpr auto kEle = Provenance::elementary;

CMat nil5() { return E(5, 1, 2) + E(5, 2, 3) + 2.0 * E(5, 4, 5); }

// ---------------------------------------------------------------------------
// The block constructions over V.

std::size_t v_size(const VSpec& v) {
  if (v.empty()) throw Error("gco: V is empty");
  const std::size_t n = v.front().first.rows();
  for (const auto& [a, b] : v) {
    if (!a.square() || !b.square() || a.rows() != n || b.rows() != n) {
      throw Error("gco: invalid parameterization (V parts must be n x n)");
    }
  }
  return n;
}

// Onb of C = span{v1 w2}.
std::vector<CMat> product_space(const VSpec& v, std::size_t n) {
  std::vector<CMat> prods;
  for (const auto& a : v)
    for (const auto& b : v) prods.push_back(a.first * b.second);
  const OpSpace c = span_of(n, prods, "C");
  if (c.dim() == 0) throw Error("gco: invalid parameterization (C = V^2 = 0)");
  return c.basis();
}

struct BlockSpec {
  std::size_t k;
  // Placements of v1, v2 (with coefficients) and of c.
  std::vector<std::tuple<std::size_t, std::size_t, int, double>> v_slots;  // (row, col, part, coeff)
  std::pair<std::size_t, std::size_t> c_slot;
};

CMat v_copy(const BlockSpec& bs, std::size_t n, const std::pair<CMat, CMat>& v) {
  CMat x(bs.k * n, bs.k * n);
  for (const auto& [r, c, part, coeff] : bs.v_slots) x.set_block(r * n, c * n, coeff * (part == 1 ? v.first : v.second));
  return x;
}

CMat c_copy(const BlockSpec& bs, std::size_t n, const CMat& c) {
  CMat x(bs.k * n, bs.k * n);
  x.set_block(bs.c_slot.first * n, bs.c_slot.second * n, c);
  return x;
}

const BlockSpec kThreeBlock{3, {{0, 1, 1, 1.0}, {1, 2, 2, 1.0}}, {0, 2}};
const BlockSpec kSevenBlock{7, {{0, 1, 1, 1.0}, {1, 2, 2, 1.0}, {3, 5, 1, 2.0}, {4, 6, 2, 2.0}}, {0, 2}};

struct GcoParts {
  OpSpace space;
  OpMap map;
  std::size_t n = 0, v_dim = 0, c_dim = 0;
};

GcoParts gco_parts(const BlockSpec& bs, const VSpec& v, const std::string& name) {
  GcoParts g;
  g.n = v_size(v);
  const std::vector<CMat> cs = product_space(v, g.n);
  const std::size_t dim = bs.k * g.n;
  std::vector<CMat> basis{CMat::identity(dim)};
  std::vector<CMat> images{CMat::identity(dim)};
  for (const auto& x : v) {
    basis.push_back(v_copy(bs, g.n, x));
    images.push_back(basis.back());
  }
  for (const auto& c : cs) {
    basis.push_back(c_copy(bs, g.n, c));
    images.push_back(CMat(dim, dim));
  }
  g.v_dim = v.size();
  g.c_dim = cs.size();
  g.space = make_space(dim, std::move(basis), name);
  g.map = make_map(g.space, dim, std::move(images), "P");
  return g;
}

void add_common(ExampleBundle& b) {
  b.expected.push_back(expect("idempotent_residual", "<", 1e-10, 0.0, kEle, "P is a projection"));
}

// ---------------------------------------------------------------------------

ExampleBundle five_by_five_like(const std::string& name, const CMat& nil, bool variant) {
  ExampleBundle b;
  b.name = name;
  b.topic = "bicontractive projection counterexample";
  b.space = make_space(5, {CMat::identity(5), nil, E(5, 1, 3)}, name);
  b.map = make_map(b.space, 5, {CMat::identity(5), nil, CMat(5, 5)}, "P");
  b.certificates.push_back({"I-P", cert_conjugation(E(5, 1, 1), E(5, 3, 3), "corner13")});
  add_common(b);
  b.expected.push_back(expect("unital", "==", true, 0.0, kEle, "P(1) = 1"));
  if (!variant) return b;
  b.experimental = true;
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  Expectation m = expect("mac.left_condition", "==", true, 0.0, kPub,
                         "changing the 2-3 or 3-2 entry makes the support condition hold");
  m.experimental = true;
  b.expected.push_back(m);
  return b;
}

ExampleBundle five_by_five() {
  ExampleBundle b = five_by_five_like("five_by_five", nil5(), false);
  b.description = "5x5 algebra with the projection zeroing the 1-3 entry";
  b.certificates.insert(b.certificates.begin(), TaggedCertificate{"P", five_by_five_certificate()});
  b.settings.max_level = 5;
  b.settings.hermitian_level = 2;
  b.settings.symmetric = true;

  // Compression of the 7 x 7 block algebra with H = C and V = C(1 ⊕ 1).
  GcoParts g = gco_parts(kSevenBlock, {{CMat::identity(1), CMat::identity(1)}}, "A(C)");
  const CMat sel = block_rows(7, 1, {0, 1, 2, 3, 5});
  const OpMap iso = map_from_function(g.space, 5, [sel](const CMat& x) { return sel * x * sel.transpose(); }, "iso");
  CMat perm(7, 7);
  const std::size_t target[7] = {0, 1, 2, 3, 5, 4, 6};
  for (std::size_t i = 0; i < 7; ++i) perm(target[i], i) = 1.0;
  const CMat sel45 = block_rows(5, 1, {3, 4});
  const OpMap inv = map_from_function(
      b.space, 7, [perm, sel45](const CMat& y) { return perm * direct_sum(y, sel45 * y * sel45.transpose()) * perm.transpose(); },
      "iso^-1");
  b.aux.push_back({"iso", iso});
  b.aux.push_back({"inv", inv});
  b.aux.push_back({"extension", ptilde_projection()});
  b.certificates.push_back({"iso", compress(sel, "rows12346")});
  b.certificates.push_back({"inv", cert_compose({cert_direct_sum({cert_inclusion(), compress(sel45)}),
                                                 cert_conjugation(perm, perm.transpose(), "reorder")})});

  const std::string cex = "5x5 counterexample";
  auto& x = b.expected;
  x.push_back(expect("space.dim", "==", 3.0, 0.0, kPub, "matrices with entries lambda, nu, c"));
  x.push_back(expect("P.certified_upper", "~", 1.0, 1e-9, kPub, cex + ": P completely contractive"));
  x.push_back(expect("I-P.certified_upper", "~", 1.0, 1e-9, kPub, cex + ": I-P completely contractive"));
  x.push_back(expect("P.lower.level5", "~", 1.0, 1e-6, kPub, cex + ": completely bicontractive"));
  x.push_back(expect("I-P.lower.level5", "~", 1.0, 1e-6, kPub, cex + ": completely bicontractive"));
  x.push_back(expect("range.is_subalgebra", "==", false, 0.0, kPub, cex + ": range not a subalgebra"));
  x.push_back(expect("range.is_jordan_subalgebra", "==", false, 0.0, kPub, cex + ": not closed under squares"));
  x.push_back(expect("2P-I.lower", ">", 1.01, 0.0, kDer, "a symmetric P would have subalgebra range"));
  x.push_back(expect("verdict.symmetric", "==", false, 0.0, kDer, "2P-I is not contractive"));
  x.push_back(expect("rk.ideal_dim", "==", 1.0, 0.0, kPub, "kernel is the copy of C"));
  x.push_back(expect("rk.squarezero", "==", true, 0.0, kPub, "kernel ideal has square zero"));
  x.push_back(expect("rk.C2_in_B", "==", true, 0.0, kPub, "C^2 inside the range"));
  x.push_back(expect("rk.condexp_residual", "<", 1e-10, 0.0, kDer, "E13 times A5 is killed by P"));
  x.push_back(expect("rk.choi_effros_assoc", "<", 1e-10, 0.0, kDer, "P(xy) is associative on the range"));
  x.push_back(expect("mac.p1", "~", E(5, 1, 1), 1e-9, kPub, "left support of C"));
  x.push_back(expect("mac.p2", "~", E(5, 3, 3), 1e-9, kPub, "right support of C"));
  x.push_back(expect("mac.left_condition", "==", false, 0.0, kPub, "C P(A)^* p2 != C P(A)^*"));
  x.push_back(expect("s5.e", "~", E(5, 4, 4) + E(5, 5, 5), 1e-8, kPub, "support projection of the extension"));
  x.push_back(expect("s5.re_norm", "~", 0.5, 1e-9, kPub, "norm-one corner element has Re of norm 1/2"));
  x.push_back(expect("s5.u_sq_norm", "<", 1e-9, 0.0, kPub, "u(x)^2 = 0"));
  x.push_back(expect("s5.m1_residual", "<", 1e-9, 0.0, kPub, "four part norms agree"));
  x.push_back(expect("s5.m2_residual", "<", 1e-9, 0.0, kPub, "u(a)^2 = u(b)^2"));
  x.push_back(expect("s5.orth_residual", "<", 1e-9, 0.0, kPub, "x = u(x) + y with y orthogonal"));
  x.push_back(expect("s5.matre_nilpotent", "==", true, 0.0, kPub, "kernel elements are nilpotent"));
  x.push_back(expect("s5.slow_ok", "==", true, 0.0, kPub, "||x^(2^n)|| <= 2 / 2^(2^n)"));
  x.push_back(expect("s5.corner_residual", "<", 1e-9, 0.0, kDer, "x lives in the corner complementary to e"));
  x.push_back(expect("sym.ok", "==", false, 0.0, kDer, "symmetric decomposition must fail"));
  x.push_back(expect("sym.witness_gain", ">", 1.0, 0.0, kDer, "witness with ||(2P-I)(x)|| > ||x||"));
  x.push_back(expect("iso.certified_upper", "<=", 1.0 + 1e-9, 0.0, kPub, "compression of the 7-block algebra"));
  x.push_back(expect("inv.certified_upper", "<=", 1.0 + 1e-9, 0.0, kPub, "inverse of the compression"));
  x.push_back(expect("iso.lower", "<=", 1.0 + 1e-6, 0.0, kDer, "complete isometry"));
  x.push_back(expect("inv.lower", "<=", 1.0 + 1e-6, 0.0, kDer, "complete isometry"));
  return b;
}

ExampleBundle five_by_five_mod23() {
  ExampleBundle b = five_by_five_like("five_by_five_mod23", E(5, 1, 2) + 2.0 * E(5, 4, 5), true);
  b.description = "5x5 variant with the 2-3 entry replaced by 0";
  return b;
}

ExampleBundle five_by_five_mod32() {
  // The 3-2 entry of every element is already 0, so replacing it by 0 gives
  // back the original algebra.
  ExampleBundle b = five_by_five_like("five_by_five_mod32", nil5(), true);
  b.description = "5x5 variant with the 3-2 entry replaced by 0";
  return b;
}

ExampleBundle ptilde_m3m2() {
  ExampleBundle b;
  b.name = "ptilde_m3m2";
  b.description = "completely positive extension of the 5x5 projection to M3 ⊕ M2";
  b.topic = "support projection";
  const OpMap p = ptilde_projection();
  b.space = p.domain();
  b.map = p;
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  b.settings.choi = true;
  b.settings.support = true;
  const ChoiReport ch = choi_cp_check(extend_by_projection(p));
  b.certificates.push_back({"P", cert_cp(5, 5, ch.choi, "choi")});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("unital", "==", true, 0.0, kEle, "P(1) = 1"));
  x.push_back(expect("choi.is_cp", "==", true, 0.0, kPub, "extension is completely positive"));
  x.push_back(expect("choi.is_contractive_cp", "==", true, 0.0, kPub, "extension is completely contractive"));
  x.push_back(expect("support.e", "~", E(5, 4, 4) + E(5, 5, 5), 1e-8, kPub, "support projection 0 ⊕ I2"));
  x.push_back(expect("support.identity_residual", "<", 1e-8, 0.0, kPub, "P(x)e = exe = xe"));
  x.push_back(expect("P.certified_upper", "<=", 1.0 + 1e-9, 0.0, kPub, "completely contractive"));
  x.push_back(expect("rk.condexp_residual", "<", 1e-8, 0.0, kPub, "conditional expectation identities"));
  return b;
}

ExampleBundle transpose_avg_m2() {
  ExampleBundle b;
  b.name = "transpose_avg_m2";
  b.description = "P(x) = (x + x^T)/2 on M2";
  b.topic = "positivity is not enough";
  b.space = full_algebra(2, "M2");
  b.map = map_from_function(b.space, 2, [](const CMat& x) { return 0.5 * (x + x.transpose()); }, "P");
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  b.settings.choi = true;
  b.settings.positivity = true;
  const CMat j{{0.0, 1.0}, {-1.0, 0.0}};
  // (I - P)(x) = ((x12 - x21)/2) (E12 - E21)
  b.certificates.push_back({"I-P", functional_times(2, {{0, 1, 0.5}, {1, 0, -0.5}}, j)});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("choi.is_cp", "==", false, 0.0, kPub, "P is not completely positive"));
  x.push_back(expect("positive_sampled", "==", true, 0.0, kPub, "P is positive"));
  x.push_back(expect("I-P.certified_upper", "<=", 1.0 + 1e-9, 0.0, kPub, "I-P completely contractive"));
  x.push_back(expect("P.lower.level1", "<=", 1.0 + 1e-6, 0.0, kPub, "P contractive"));
  x.push_back(expect("P.lower.level2", ">", 1.0 + 1e-3, 0.0, kDer, "unital and not CP, so not completely contractive"));
  return b;
}

ExampleBundle tri2_corner() {
  ExampleBundle b;
  b.name = "tri2_corner";
  b.description = "projection of upper triangular 2x2 matrices onto C E11";
  b.topic = "non-central P(1)";
  b.space = make_space(2, {E(2, 1, 1), E(2, 1, 2), E(2, 2, 2)}, "T2");
  b.map = make_map(b.space, 2, {E(2, 1, 1), CMat(2, 2), CMat(2, 2)}, "P");
  b.settings.max_level = 2;
  b.settings.hermitian_level = 2;
  b.settings.symmetric = true;
  const CMat u = CMat::diag({1.0, -1.0});
  b.certificates.push_back({"P", cert_conjugation(E(2, 1, 1), E(2, 1, 1))});
  b.certificates.push_back({"I-P", cert_conjugation(CMat::identity(2), E(2, 2, 2))});
  b.certificates.push_back({"2P-I", cert_conjugation(CMat::identity(2), u)});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("verdict.bicontractive_certified", "==", true, 0.0, kPub, "completely bicontractive"));
  x.push_back(expect("verdict.symmetric_certified", "==", true, 0.0, kDer, "2P-I(x) = x diag(1,-1)"));
  x.push_back(expect("hermitian_sup", "<=", 1.0 + 1e-6, 0.0, kPub, "completely hermitian"));
  x.push_back(expect("range.is_subalgebra", "==", true, 0.0, kPub, "range is a subalgebra"));
  x.push_back(expect("q", "~", E(2, 1, 1), 1e-12, kDer, "P(1) = E11, not central"));
  x.push_back(expect("q_is_projection", "==", true, 0.0, kPub, "P(1) is a projection"));
  x.push_back(expect("split_residual", "<", 1e-12, 0.0, kPub, "P(a) = P(qaq)"));
  x.push_back(expect("sym.ok", "==", true, 0.0, kDer, "symmetric decomposition with q = E11"));
  x.push_back(expect("sym.q", "~", E(2, 1, 1), 1e-12, kDer, "q = E11"));
  x.push_back(expect("sym.formula_residual", "<", 1e-10, 0.0, kDer, "theta = id"));
  return b;
}

ExampleBundle tri2_counterexample() {
  ExampleBundle b;
  b.name = "tri2_bicontractive_counterexample";
  b.description = "P([[a, b], [0, c]]) = ((a - c)/2) diag(1, -1) on upper triangular 2x2";
  b.topic = "bicontractive with P(1) = 0";
  b.space = make_space(2, {E(2, 1, 1), E(2, 1, 2), E(2, 2, 2)}, "T2");
  const CMat d = CMat::diag({1.0, -1.0});
  b.map = make_map(b.space, 2, {0.5 * d, CMat(2, 2), -0.5 * d}, "P");
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  b.certificates.push_back({"P", functional_times(2, {{0, 0, 0.5}, {1, 1, -0.5}}, d)});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("q", "~", CMat(2, 2), 1e-12, kPub, "P(1) = 0"));
  x.push_back(expect("range.is_subalgebra", "==", false, 0.0, kPub, "range is not a subalgebra"));
  x.push_back(expect("P.certified_upper", "<=", 1.0 + 1e-9, 0.0, kPub, "P completely contractive"));
  x.push_back(expect("I-P.lower.level1", "<=", 1.0 + 1e-6, 0.0, kPub, "bicontractive"));
  x.push_back(expect("I-P.lower.level2", ">", 1.1, 0.0, kDer, "I-P is not 2-contractive"));
  return b;
}

ExampleBundle parity_d2() {
  ExampleBundle b;
  b.name = "parity_d2";
  b.description = "two-point model of the even-part projection on C([-1, 1])";
  b.topic = "symmetric projection";
  b.space = make_space(2, {E(2, 1, 1), E(2, 2, 2)}, "D2");
  const CMat j{{0.0, 1.0}, {1.0, 0.0}};
  b.map = map_from_function(b.space, 2, [j](const CMat& x) { return 0.5 * (x + j * x * j); }, "P");
  b.settings.max_level = 2;
  b.settings.hermitian_level = 2;
  b.settings.symmetric = true;
  CMat choi = 0.5 * CMat::identity(4);
  b.certificates.push_back({"P", cert_cp(2, 2, choi, "state")});
  b.certificates.push_back({"2P-I", cert_conjugation(j, j, "swap")});
  b.certificates.push_back({"I-P", functional_times(2, {{0, 0, 0.5}, {1, 1, -0.5}}, CMat::diag({1.0, -1.0}))});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("verdict.symmetric_certified", "==", true, 0.0, kDer, "2P-I is the swap"));
  x.push_back(expect("verdict.bicontractive_certified", "==", true, 0.0, kDer, "symmetric implies bicontractive"));
  x.push_back(expect("sym.ok", "==", true, 0.0, kDer, "theta = swap"));
  x.push_back(expect("sym.q", "~", CMat::identity(2), 1e-12, kDer, "q = 1"));
  x.push_back(expect("sym.formula_residual", "<", 1e-10, 0.0, kDer, "P(a) = (a + theta(a))/2"));
  x.push_back(expect("range.dim", "==", 1.0, 0.0, kDer, "range is the scalars"));
  x.push_back(expect("rk.kernel_is_subalgebra", "==", false, 0.0, kPub, "kernel need not be a subalgebra"));
  x.push_back(expect("rk.C2_in_B", "==", true, 0.0, kPub, "C^2 inside the range"));
  x.push_back(expect("hermitian_sup", "~", std::sqrt(2.0), 1e-6, kDer, "max |cos(t/2)| + |sin(t/2)| on two points"));
  return b;
}

ExampleBundle ad_symmetry_m2() {
  ExampleBundle b;
  b.name = "ad_symmetry_m2";
  b.description = "P = (I + Ad diag(1, -1))/2 on M2";
  b.topic = "symmetric projection";
  b.space = full_algebra(2, "M2");
  const CMat u = CMat::diag({1.0, -1.0});
  b.map = map_from_function(b.space, 2, [u](const CMat& x) { return 0.5 * (x + u * x * u); }, "P");
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  b.settings.symmetric = true;
  b.settings.choi = true;
  b.certificates.push_back({"P", unitary_average(u, 1.0)});
  b.certificates.push_back({"I-P", unitary_average(u, -1.0)});
  b.certificates.push_back({"2P-I", cert_conjugation(u, u, "Ad")});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("sym.ok", "==", true, 0.0, kDer, "theta = Ad diag(1, -1)"));
  x.push_back(expect("sym.q", "~", CMat::identity(2), 1e-12, kDer, "q = 1"));
  x.push_back(expect("range.is_subalgebra", "==", true, 0.0, kDer, "diagonal subalgebra"));
  x.push_back(expect("range.dim", "==", 2.0, 0.0, kDer, "diagonal subalgebra"));
  x.push_back(expect("choi.is_cp", "==", true, 0.0, kEle, "conditional expectation"));
  x.push_back(expect("rk.condexp_residual", "<", 1e-10, 0.0, kEle, "conditional expectation"));
  return b;
}

ExampleBundle paulsen_U() {
  ExampleBundle b;
  b.name = "paulsen_U";
  b.description = "U(X) for X = span{E12} with its diagonal expectation";
  b.topic = "Paulsen system";
  b.space = paulsen_space(make_space(2, {E(2, 1, 2)}, "X"));
  const CMat u = direct_sum(CMat::identity(2), -1.0 * CMat::identity(2));
  b.map = map_from_function(b.space, 4, [u](const CMat& x) { return 0.5 * (x + u * x * u); }, "P");
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  b.certificates.push_back({"P", unitary_average(u, 1.0)});
  b.certificates.push_back({"I-P", unitary_average(u, -1.0)});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("space.dim", "==", 3.0, 0.0, kPub, "subspace of the Paulsen system"));
  x.push_back(expect("space.ambient_dim", "==", 4.0, 0.0, kPub, "subspace of the Paulsen system"));
  x.push_back(expect("space.is_subalgebra", "==", true, 0.0, kDer, "U(X) is an algebra"));
  x.push_back(expect("range.is_subalgebra", "==", true, 0.0, kDer, "scalar diagonal"));
  x.push_back(expect("verdict.bicontractive_certified", "==", true, 0.0, kDer, "averages of unitary conjugates"));
  return b;
}

ExampleBundle paulsen_U0() {
  ExampleBundle b;
  b.name = "paulsen_U0";
  b.description = "U_0(V) for V = span{E12}: equal diagonal entries";
  b.topic = "Paulsen system";
  b.space = make_space(4, {CMat::identity(4), paulsen_corner(E(2, 1, 2))}, "U0(V)");
  b.map = make_map(b.space, 4, {CMat::identity(4), CMat(4, 4)}, "P");
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  b.certificates.push_back(
      {"P", cert_compose({cert_conjugation(block_rows(4, 1, {0}), block_rows(4, 1, {0}).transpose()),
                          cert_direct_sum(std::vector<Certificate>(4, cert_inclusion()))})});
  b.certificates.push_back({"I-P", cert_conjugation(block_projection(2, 2, 0), block_projection(2, 2, 1))});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("space.dim", "==", 2.0, 0.0, kDer, "scalar plus V"));
  x.push_back(expect("space.is_subalgebra", "==", true, 0.0, kDer, "U_0(V) is an algebra"));
  x.push_back(expect("verdict.bicontractive_certified", "==", true, 0.0, kDer, "state and corner"));
  return b;
}

ExampleBundle theta_v() {
  ExampleBundle b;
  b.name = "theta_v";
  b.description = "theta_v on U(M2) for v(x) = diag(1, 1/2) x swap";
  b.topic = "Paulsen system";
  b.kind = ExampleBundle::Kind::morphism;
  b.space = paulsen_space(full_algebra(2, "M2"));
  const CMat a = CMat::diag({1.0, 0.5});
  const CMat s{{0.0, 1.0}, {1.0, 0.0}};
  b.map = map_from_function(
      b.space, 4,
      [a, s](const CMat& x) {
        CMat y = x;
        y.set_block(0, 2, a * x.block(0, 2, 2, 2) * s);
        return y;
      },
      "theta_v");
  b.settings.aux_level = 2;
  b.certificates.push_back({"theta", cert_paulsen(2, 2, cert_conjugation(a, s, "v"))});
  auto& x = b.expected;
  x.push_back(expect("morph.hom_residual", "<", 1e-10, 0.0, kPub, "theta_v is a homomorphism"));
  x.push_back(expect("theta.certified_upper", "<=", 1.0 + 1e-9, 0.0, kPub, "theta_v completely contractive"));
  x.push_back(expect("morph.lower", "<=", 1.0 + 1e-6, 0.0, kDer, "below the certified bound"));
  x.push_back(expect("morph.real_positive", "==", true, 0.0, kDer, "contractive unital homomorphism"));
  return b;
}

ExampleBundle joup() {
  const CMat xm = E(4, 1, 4) - E(4, 2, 3);
  const CMat ym = E(4, 2, 1) + E(4, 3, 4);
  ExampleBundle b = build_gco_A({{xm, xm}, {ym, ym}}, "joup");
  b.description = "A(V) for V = {z ⊕ z : z in span{x, y}}, xy = -yx";
  b.topic = "Jordan range counterexample";
  b.settings.max_level = 1;
  b.settings.hermitian_level = 1;
  b.settings.restarts = 8;
  b.probes.push_back({"generators.anticommutator", [xm, ym]() -> FieldValue { return op_norm(xm * ym + ym * xm); }});
  b.probes.push_back({"generators.square", [xm, ym]() -> FieldValue { return std::max(op_norm(xm * xm), op_norm(ym * ym)); }});
  auto& x = b.expected;
  x.push_back(expect("generators.anticommutator", "==", 0.0, 0.0, kPub, "xy = -yx"));
  x.push_back(expect("generators.square", "==", 0.0, 0.0, kPub, "z^2 = 0 on F"));
  x.push_back(expect("range.is_jordan_subalgebra", "==", true, 0.0, kPub, "range closed under squares"));
  x.push_back(expect("s5.matre_nilpotent", "==", true, 0.0, kDer, "strictly block upper triangular"));
  return b;
}

struct Entry {
  ExampleInfo info;
  std::function<ExampleBundle()> build;
};

VSpec default_v() {
  return {{CMat::unit(2, 0, 1), CMat::unit(2, 1, 0)}};
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"five_by_five", "5x5 algebra with the projection zeroing the 1-3 entry", "bicontractive projection counterexample", false}, five_by_five},
      {{"five_by_five_mod23", "5x5 variant with the 2-3 entry replaced by 0", "bicontractive projection counterexample", true}, five_by_five_mod23},
      {{"five_by_five_mod32", "5x5 variant with the 3-2 entry replaced by 0", "bicontractive projection counterexample", true}, five_by_five_mod32},
      {{"gco_B", "3-block algebra B over V = span{E12 ⊕ E21}", "bicontractive projection counterexample", false}, [] { return build_gco_B(default_v()); }},
      {{"gco_A", "7-block algebra A(V) over V = span{E12 ⊕ E21}", "bicontractive projection counterexample", false}, [] { return build_gco_A(default_v()); }},
      {{"joup", "A(V) for V = {z ⊕ z : z in span{x, y}}, xy = -yx", "Jordan range counterexample", false}, joup},
      {{"ptilde_m3m2", "completely positive extension of the 5x5 projection to M3 ⊕ M2", "support projection", false}, ptilde_m3m2},
      {{"transpose_avg_m2", "P(x) = (x + x^T)/2 on M2", "positivity is not enough", false}, transpose_avg_m2},
      {{"tri2_corner", "projection of upper triangular 2x2 matrices onto C E11", "non-central P(1)", false}, tri2_corner},
      {{"tri2_bicontractive_counterexample", "P([[a, b], [0, c]]) = ((a - c)/2) diag(1, -1)", "bicontractive with P(1) = 0", false}, tri2_counterexample},
      {{"parity_d2", "two-point model of the even-part projection on C([-1, 1])", "symmetric projection", false}, parity_d2},
      {{"ad_symmetry_m2", "P = (I + Ad diag(1, -1))/2 on M2", "symmetric projection", false}, ad_symmetry_m2},
      {{"paulsen_U", "U(X) for X = span{E12} with its diagonal expectation", "Paulsen system", false}, paulsen_U},
      {{"paulsen_U0", "U_0(V) for V = span{E12}: equal diagonal entries", "Paulsen system", false}, paulsen_U0},
      {{"theta_v", "theta_v on U(M2) for v(x) = diag(1, 1/2) x swap", "Paulsen system", false}, theta_v},
  };
  return r;
}

}  // namespace

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::published: return "published";
    case Provenance::derived: return "derived";
    case Provenance::elementary: return "elementary";
  }
  return "derived";
}

Provenance provenance_from_name(const std::string& s) {
  if (s == "published") return Provenance::published;
  if (s == "derived") return Provenance::derived;
  if (s == "elementary") return Provenance::elementary;
  throw Error("unknown provenance: " + s);
}

std::vector<ExampleInfo> list_examples() {
  std::vector<ExampleInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

ExampleBundle build_example(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.info.name == name) {
      ExampleBundle b = e.build();
      b.name = e.info.name;
      b.description = e.info.description;
      b.topic = e.info.topic;
      b.experimental = e.info.experimental;
      return b;
    }
  }
  throw Error("unknown example: " + name);
}

OpSpace five_by_five_space() {
  return make_space(5, {CMat::identity(5), nil5(), E(5, 1, 3)}, "A5");
}

OpMap five_by_five_projection() {
  return make_map(five_by_five_space(), 5, {CMat::identity(5), nil5(), CMat(5, 5)}, "P5");
}

OpMap ptilde_projection() {
  std::vector<CMat> basis;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) basis.push_back(CMat::unit(5, i, j));
  for (std::size_t i = 3; i < 5; ++i)
    for (std::size_t j = 3; j < 5; ++j) basis.push_back(CMat::unit(5, i, j));
  OpSpace s = make_space(5, std::move(basis), "M3+M2");
  return map_from_function(
      std::move(s), 5,
      [](const CMat& x) {
        const cplx a = x(3, 3), b = x(3, 4), c = x(4, 3), d = x(4, 4);
        CMat y(5, 5);
        for (std::size_t i = 0; i < 3; ++i) y(i, i) = 0.5 * (a + d);
        y(0, 1) = y(1, 2) = 0.5 * b;
        y(1, 0) = y(2, 1) = 0.5 * c;
        y.set_block(3, 3, x.block(3, 3, 2, 2));
        return y;
      },
      "Ptilde");
}

Certificate five_by_five_certificate() {
  // y = [[l, 2 nu], [0, l]] -> [[l, nu, 0], [0, l, nu], [0, 0, l]] as the
  // average of y ⊕ l and l ⊕ y.
  const CMat e1 = block_rows(2, 1, {0});
  const Certificate lam = compress(e1, "lambda");
  const Certificate corner = cert_compose(
      {cert_direct_sum({cert_direct_sum({cert_inclusion(), lam}), cert_direct_sum({lam, cert_inclusion()})}),
       average_pair(3)});
  return cert_compose({compress(block_rows(5, 1, {3, 4}), "rows45"),
                       cert_direct_sum({corner, cert_inclusion()})});
}

Certificate gco_A_certificate(std::size_t n) {
  // Blocks 4..7 form y; j(y) is the average of two compressions of y.
  const Certificate z1 = cert_direct_sum({compress(block_rows(4, n, {0, 2}), "blocks13"), compress(block_rows(4, n, {3}), "block4")});
  const Certificate z2 = cert_direct_sum({compress(block_rows(4, n, {0}), "block1"), compress(block_rows(4, n, {1, 3}), "blocks24")});
  const Certificate j = cert_compose({cert_direct_sum({z1, z2}), average_pair(3 * n)}, "j");
  return cert_compose({compress(block_rows(7, n, {3, 4, 5, 6}), "blocks4567"), cert_direct_sum({j, cert_inclusion()})});
}

Certificate block_corner_certificate(std::size_t k, std::size_t n, std::size_t i, std::size_t j) {
  return cert_conjugation(block_projection(k, n, i), block_projection(k, n, j), "corner");
}

ExampleBundle build_gco_B(const VSpec& v, const std::string& name) {
  GcoParts g = gco_parts(kThreeBlock, v, name);
  ExampleBundle b;
  b.name = name;
  b.description = "3-block algebra B over V";
  b.topic = "bicontractive projection counterexample";
  b.space = g.space;
  b.map = g.map;
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  b.certificates.push_back({"I-P", block_corner_certificate(3, g.n, 0, 2)});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("rk.ideal_dim", ">=", 1.0, 0.0, kPub, "C != 0"));
  x.push_back(expect("rk.squarezero", "==", true, 0.0, kPub, "copy of C has square zero"));
  x.push_back(expect("rk.ideal_in_D", "==", true, 0.0, kPub, "copy of C is an ideal"));
  x.push_back(expect("range.generates_space", "==", true, 0.0, kPub, "C is generated by V"));
  x.push_back(expect("range.is_subalgebra", "==", false, 0.0, kPub, "E^2 is not inside E"));
  x.push_back(expect("I-P.certified_upper", "<=", 1.0 + 1e-9, 0.0, kDer, "projection onto C is a corner"));
  return b;
}

ExampleBundle build_gco_A(const VSpec& v, const std::string& name) {
  GcoParts g = gco_parts(kSevenBlock, v, name);
  ExampleBundle b;
  b.name = name;
  b.description = "7-block algebra A(V)";
  b.topic = "bicontractive projection counterexample";
  b.space = g.space;
  b.map = g.map;
  b.settings.max_level = 2;
  b.settings.hermitian_level = 1;
  b.certificates.push_back({"P", gco_A_certificate(g.n)});
  b.certificates.push_back({"I-P", block_corner_certificate(7, g.n, 0, 2)});
  const std::size_t n = g.n;
  const OpSpace space = g.space;
  const std::size_t vd = g.v_dim;
  b.probes.push_back({"blocks.coefficient_residual", [space, n, vd]() -> FieldValue {
                        double r = 0.0;
                        for (std::size_t t = 1; t <= vd; ++t) {
                          const CMat& x = space.basis()[t];
                          r = std::max(r, max_abs_diff(x.block(3 * n, 5 * n, n, n), 2.0 * x.block(0, n, n, n)));
                          r = std::max(r, max_abs_diff(x.block(4 * n, 6 * n, n, n), 2.0 * x.block(n, 2 * n, n, n)));
                        }
                        return r;
                      }});
  add_common(b);
  auto& x = b.expected;
  x.push_back(expect("space.ambient_dim", "==", static_cast<double>(7 * n), 0.0, kPub, "seven blocks"));
  x.push_back(expect("rk.kernel_dim", "==", static_cast<double>(g.c_dim), 0.0, kDer, "kernel is the copy of C"));
  x.push_back(expect("blocks.coefficient_residual", "==", 0.0, 0.0, kPub, "lower copy of V carries coefficient 2"));
  x.push_back(expect("rk.squarezero", "==", true, 0.0, kPub, "copy of C has square zero"));
  x.push_back(expect("rk.ideal_in_D", "==", true, 0.0, kPub, "copy of C is an ideal"));
  x.push_back(expect("P.certified_upper", "<=", 1.0 + 1e-9, 0.0, kPub, "P completely contractive"));
  x.push_back(expect("I-P.certified_upper", "<=", 1.0 + 1e-9, 0.0, kPub, "projection onto C completely contractive"));
  x.push_back(expect("range.is_subalgebra", "==", false, 0.0, kPub, "range is not a subalgebra"));
  x.push_back(expect("mac.left_condition", "==", false, 0.0, kPub, "support condition fails for A(V)"));
  return b;
}

}  // namespace opalg
