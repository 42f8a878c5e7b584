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

#include <random>

#include "opalg/cmat.hpp"

namespace opalg::testing {

inline CMat random_cmat(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat m(r, c);
  for (auto& v : m.data()) v = cplx{g(rng), g(rng)};
  return m;
}

inline CMat random_hermitian(std::mt19937_64& rng, std::size_t n) {
  return random_cmat(rng, n, n).re();
}

/// E_ij with one-based indices, matching the usual matrix-unit notation.
inline CMat E(std::size_t n, std::size_t i, std::size_t j) { return CMat::unit(n, i - 1, j - 1); }

}  // namespace opalg::testing
