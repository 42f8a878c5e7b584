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

#include <cstddef>
#include <string>
#include <vector>

#include "opalg/cbmaps.hpp"
#include "opalg/cmat.hpp"

namespace opalg {

/// One block moved by a placement: source block (row group, col group) goes
/// to destination block (row group, col group).
struct PlacementItem {
  std::size_t src_row = 0, src_col = 0;
  std::size_t dst_row = 0, dst_col = 0;
};

/// Factorization of a map into primitives whose complete contractivity is
/// checked directly. Internal nodes: compose (children applied in order),
/// direct_sum (same input, block-diagonal output), tensor_id (child applied
/// to each block of a k x k block matrix).
struct Certificate {
  enum class Kind { compose, direct_sum, tensor_id, conjugation, placement, paulsen, inclusion, cp };

  Kind kind = Kind::inclusion;
  std::vector<Certificate> children;
  std::string label;

  // conjugation: x -> a x b
  CMat a, b;
  // placement
  std::vector<std::size_t> in_rows, in_cols, out_rows, out_cols;
  std::vector<PlacementItem> items;
  // tensor_id
  std::size_t k = 1;
  // paulsen: [[s 1, x], [0, t 1]] (corner size n_in) -> [[s 1, v(x)], [0, t 1]]
  // (corner size n_out), v given by the single child.
  std::size_t n_in = 0, n_out = 0;
  // cp: x -> sum_ij x_ij * block_ij(choi), blocks n_out x n_out, n_in x n_in input
  CMat choi;
};

Certificate cert_compose(std::vector<Certificate> children, std::string label = "");
Certificate cert_direct_sum(std::vector<Certificate> children, std::string label = "");
Certificate cert_tensor_id(std::size_t k, Certificate child, std::string label = "");
Certificate cert_conjugation(CMat a, CMat b, std::string label = "");
Certificate cert_placement(std::vector<std::size_t> in_rows, std::vector<std::size_t> in_cols,
                           std::vector<std::size_t> out_rows,
                           std::vector<std::size_t> out_cols, std::vector<PlacementItem> items,
                           std::string label = "");
Certificate cert_paulsen(std::size_t n_in, std::size_t n_out, Certificate child,
                         std::string label = "");
Certificate cert_inclusion(std::string label = "");
Certificate cert_cp(std::size_t n_in, std::size_t n_out, CMat choi, std::string label = "");

std::string kind_name(Certificate::Kind k);
Certificate::Kind kind_from_name(const std::string& s);

/// Evaluates the composite on one input. Throws Error on shape mismatch or a
/// violated input side condition (Paulsen shape).
CMat evaluate(const Certificate& c, const CMat& x, const Tolerances& tol = {});

struct CertificateCheck {
  bool valid = false;
  double certified_upper = 0.0;
  /// Path into the tree ("root/1/0") and reason when invalid.
  std::string failure;
};

/// Side conditions of every primitive plus agreement with phi on the domain
/// onb. certified_upper is the product of leaf bounds along compositions
/// (max across direct sums).
CertificateCheck check_certificate(const Certificate& c, const OpMap& phi,
                                   const Tolerances& tol = {});

/// Side conditions only; returns the bound or fills `failure`.
CertificateCheck check_primitives(const Certificate& c, const Tolerances& tol = {});

}  // namespace opalg
