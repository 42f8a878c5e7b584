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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace opalg {

using cplx = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical thresholds shared by all modules.
struct Tolerances {
  double eps_eq = 1e-9;    // entrywise equality
  double eps_psd = 1e-8;   // eigenvalue floor for PSD tests, numerical rank
  double eps_norm = 1e-6;  // norm-estimate slack
  int max_iter = 10000;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Dense complex matrix, row-major.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols);
  CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMat(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMat zeros(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }
  static CMat identity(std::size_t n);
  /// Matrix unit E_ij in M_n, zero-based indices.
  static CMat unit(std::size_t n, std::size_t i, std::size_t j);
  static CMat diag(std::span<const cplx> d);
  static CMat diag(std::initializer_list<cplx> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  CMat adjoint() const;
  CMat transpose() const;
  CMat conj() const;
  cplx trace() const;

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cplx s);

  /// Sub-block of size r x c starting at (i0, j0).
  CMat block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const;
  void set_block(std::size_t i0, std::size_t j0, const CMat& b);

  /// Hermitian and anti-Hermitian parts: x = re() + i * im().
  CMat re() const;
  CMat im() const;

  double max_abs() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator-(CMat a);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(cplx s, CMat a);
CMat operator*(CMat a, cplx s);

/// Hilbert-Schmidt inner product tr(a* b).
cplx hs_inner(const CMat& a, const CMat& b);
double hs_norm(const CMat& a);

CMat kron(const CMat& a, const CMat& b);
CMat direct_sum(const CMat& a, const CMat& b);
CMat direct_sum(std::span<const CMat> parts);
/// Places `x` in block (i, j) of a k x k block matrix of zero blocks.
CMat block_embed(const CMat& x, std::size_t k, std::size_t i, std::size_t j);

/// Entrywise comparison: max |a_ij - b_ij| <= eps. Shape mismatch is unequal.
bool approx_equal(const CMat& a, const CMat& b, double eps);
double max_abs_diff(const CMat& a, const CMat& b);

std::string to_string(const CMat& a, int precision = 6);

}  // namespace opalg
