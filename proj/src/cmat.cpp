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

#include "opalg/cmat.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace opalg {

void Tolerances::validate() const {
  if (!(eps_eq > 0) || !(eps_psd > 0) || !(eps_norm > 0)) {
    throw Error("tolerances must be positive");
  }
  if (max_iter < 1) throw Error("max_iter must be at least 1");
}

CMat::CMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMat::CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error("CMat: entry count " + std::to_string(data_.size()) +
                " does not match shape " + std::to_string(rows) + "x" +
                std::to_string(cols));
  }
  if (!all_finite()) throw Error("CMat: non-finite entry");
}

CMat::CMat(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("CMat: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw Error("CMat::unit: index out of range");
  CMat m(n, n);
  m(i, j) = 1.0;
  return m;
}

CMat CMat::diag(std::span<const cplx> d) {
  CMat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMat CMat::diag(std::initializer_list<cplx> d) {
  return diag(std::span<const cplx>(d.begin(), d.size()));
}

CMat CMat::adjoint() const {
  CMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMat CMat::transpose() const {
  CMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMat CMat::conj() const {
  CMat r = *this;
  for (auto& v : r.data_) v = std::conj(v);
  return r;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

CMat& CMat::operator+=(const CMat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("CMat +: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("CMat -: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMat& CMat::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMat CMat::block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
  if (i0 + r > rows_ || j0 + c > cols_) throw Error("CMat::block: out of range");
  CMat b(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
  return b;
}

void CMat::set_block(std::size_t i0, std::size_t j0, const CMat& b) {
  if (i0 + b.rows() > rows_ || j0 + b.cols() > cols_) {
    throw Error("CMat::set_block: out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

CMat CMat::re() const {
  CMat r = *this + adjoint();
  r *= 0.5;
  return r;
}

CMat CMat::im() const {
  CMat r = *this - adjoint();
  r *= cplx{0.0, -0.5};
  return r;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool CMat::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator-(CMat a) { return a *= -1.0; }

CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) {
    throw Error("CMat *: inner dimensions " + std::to_string(a.cols()) + " vs " +
                std::to_string(b.rows()));
  }
  CMat r(a.rows(), b.cols());
  const std::size_t n = a.cols();
  const std::size_t m = b.cols();
  auto rd = r.data();
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ri = rd.data() + i * m;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = ad[i * n + k];
      if (aik == cplx{0.0, 0.0}) continue;
      const cplx* bk = bd.data() + k * m;
      for (std::size_t j = 0; j < m; ++j) ri[j] += aik * bk[j];
    }
  }
  return r;
}

CMat operator*(cplx s, CMat a) { return a *= s; }
CMat operator*(CMat a, cplx s) { return a *= s; }

cplx hs_inner(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("hs_inner: shape mismatch");
  cplx s = 0.0;
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < ad.size(); ++k) s += std::conj(ad[k]) * bd[k];
  return s;
}

double hs_norm(const CMat& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

CMat kron(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      if (s == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return r;
}

CMat direct_sum(const CMat& a, const CMat& b) {
  CMat r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

CMat direct_sum(std::span<const CMat> parts) {
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  CMat r(rows, cols);
  std::size_t i = 0, j = 0;
  for (const auto& p : parts) {
    r.set_block(i, j, p);
    i += p.rows();
    j += p.cols();
  }
  return r;
}

CMat block_embed(const CMat& x, std::size_t k, std::size_t i, std::size_t j) {
  CMat r(k * x.rows(), k * x.cols());
  r.set_block(i * x.rows(), j * x.cols(), x);
  return r;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  double m = 0.0;
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < ad.size(); ++k) m = std::max(m, std::abs(ad[k] - bd[k]));
  return m;
}

bool approx_equal(const CMat& a, const CMat& b, double eps) {
  return max_abs_diff(a, b) <= eps;
}

std::string to_string(const CMat& a, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx v = a(i, j);
      if (j) os << ", ";
      if (v.imag() == 0.0) {
        os << v.real();
      } else {
        os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
      }
    }
    os << (i + 1 == a.rows() ? "]]" : "]\n");
  }
  return os.str();
}

}  // namespace opalg
