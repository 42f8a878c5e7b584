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

// Seeded randomized property suites shared by the unit tests and the
// acceptance binary.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "opalg/cbmaps.hpp"
#include "opalg/certificate.hpp"
#include "opalg/gallery.hpp"
#include "opalg/linalg.hpp"
#include "opalg/projlab.hpp"
#include "opalg/random.hpp"

namespace opalg::properties {

struct Outcome {
  std::string name;
  bool ok = true;
  int instances = 0;
  std::string detail;  // first violation, or a summary
  double seconds = 0.0;
};

constexpr std::uint64_t kBaseSeed = 0x5eed;
constexpr int kInstances = 200;

namespace detail {

inline Tolerances seeded(std::uint64_t stream) {
  Tolerances t;
  t.seed = derive_seed(kBaseSeed, stream);
  return t;
}

inline CMat scaled_to_norm(const CMat& x, double norm) { return (norm / op_norm(x)) * x; }

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline OpSpace full_algebra(std::size_t n) {
  std::vector<CMat> b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b.push_back(CMat::unit(n, i, j));
  return make_space(n, b, "M" + std::to_string(n));
}

// A random subspace of M_2 of dimension 2..4.
inline OpSpace random_space(Rng& rng) {
  const std::size_t d = 2 + rng() % 3;
  if (d == 4) return full_algebra(2);
  std::vector<CMat> b;
  for (std::size_t i = 0; i < d; ++i) b.push_back(gaussian_cmat(rng, 2, 2));
  return make_space(2, b, "S");
}

// Block (i, j) of the Choi matrix is phi(E_ij).
inline CMat kraus_choi(const std::vector<CMat>& kraus, std::size_t n, std::size_t m) {
  CMat c(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CMat blk(m, m);
      for (const auto& k : kraus) blk += k * CMat::unit(n, i, j) * k.adjoint();
      c.set_block(i * m, j * m, blk);
    }
  return c;
}

inline std::vector<CMat> random_kraus(Rng& rng, std::size_t n, std::size_t m, double scale) {
  const std::size_t r = 1 + rng() % 3;
  std::vector<CMat> kraus;
  for (std::size_t i = 0; i < r; ++i) kraus.push_back(gaussian_cmat(rng, m, n));
  CMat s(m, m);
  for (const auto& k : kraus) s += k * k.adjoint();
  const double f = std::sqrt(scale / op_norm(s));
  for (auto& k : kraus) k = f * k;
  return kraus;
}

inline CMat random_element(Rng& rng, const std::vector<CMat>& onb) {
  CMat x(onb.front().rows(), onb.front().cols());
  for (const auto& b : onb) x += gaussian_cplx(rng) * b;
  const double n = hs_norm(x);
  return n > 0.0 ? (1.0 / n) * x : x;
}

struct GalleryProjection {
  std::string name;
  OpMap p;
  bool unital = false;
  bool p_certified = false;           // certificate for P with bound <= 1
  bool complement_certified = false;  // certificate for I - P with bound <= 1
};

inline std::vector<GalleryProjection> gallery_projections() {
  std::vector<GalleryProjection> out;
  const Tolerances tol;
  for (const auto& info : list_examples()) {
    const ExampleBundle b = build_example(info.name);
    if (b.kind != ExampleBundle::Kind::projection) continue;
    GalleryProjection g{info.name, b.map};
    const std::size_t n = b.space.ambient_dim();
    const CMat one = CMat::identity(n);
    g.unital = b.space.contains(one, tol) && approx_equal(b.map.apply(one, tol), one, tol.eps_eq);
    const OpMap ip = complement_map(b.map);
    for (const auto& c : b.certificates) {
      const OpMap* target = c.target == "P" ? &b.map : c.target == "I-P" ? &ip : nullptr;
      if (!target) continue;
      const CertificateCheck chk = check_certificate(c.certificate, *target, tol);
      const bool good = chk.valid && chk.certified_upper <= 1.0 + tol.eps_norm;
      if (c.target == "P") g.p_certified = g.p_certified || good;
      if (c.target == "I-P") g.complement_certified = g.complement_certified || good;
    }
    out.push_back(std::move(g));
  }
  return out;
}

inline bool sampled_real_positive(const OpMap& p, std::uint64_t stream) {
  const Tolerances tol = seeded(stream);
  for (const auto& [k, x] : sample_accretive(p.domain(), 64, 2, tol)) {
    if (min_eigenvalue(p.apply_amplified(x, k, tol).re()) < -tol.eps_psd * std::max(1.0, op_norm(x))) return false;
  }
  return true;
}

inline std::string names(const std::vector<const GalleryProjection*>& v) {
  std::string s;
  for (const auto* g : v) s += (s.empty() ? "" : ", ") + g->name;
  return s;
}

template <class F>
Outcome timed(std::string name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  o.name = std::move(name);
  body(o);
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

inline std::string sci(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

inline void violation(Outcome& o, const std::string& what) {
  if (o.ok) o.detail = what;
  o.ok = false;
}

}  // namespace detail

/// norm_lower(phi, k) <= norm_lower(phi, k + 1) + eps_norm for k = 1, 2, 3.
inline Outcome monotone_levels(int count = kInstances) {
  return detail::timed("norm_lower monotone in level", [&](Outcome& o) {
    Rng rng(derive_seed(kBaseSeed, 1));
    double worst = -1.0;
    for (int i = 0; i < count; ++i) {
      const OpSpace s = detail::random_space(rng);
      std::vector<CMat> images;
      for (std::size_t j = 0; j < s.dim(); ++j) images.push_back(gaussian_cmat(rng, 2, 2));
      const OpMap phi = make_map(s, 2, images, "random");
      const Tolerances tol = detail::seeded(1000 + i);
      const auto reps = norm_lower_levels(phi, 3, tol, search_with_restarts(2));
      for (std::size_t k = 0; k + 1 < reps.size(); ++k) {
        if (reps[k].lower_bound > reps[k + 1].lower_bound + tol.eps_norm) {
          std::ostringstream ss;
          ss << "instance " << i << ": level " << k + 1 << " gives " << reps[k].lower_bound << ", level " << k + 2
             << " gives " << reps[k + 1].lower_bound;
          detail::violation(o, ss.str());
        }
      }
      worst = std::max(worst, reps[0].lower_bound - reps[2].lower_bound);
      ++o.instances;
    }
    if (o.ok) o.detail = "max drop from level 1 to level 3 " + detail::sci(worst);
  });
}

/// Maps built from random certificates never exceed their certified bound.
inline Outcome certificate_soundness(int count = kInstances) {
  return detail::timed("certificate soundness", [&](Outcome& o) {
    Rng rng(derive_seed(kBaseSeed, 2));
    double worst = 0.0;
    auto contraction = [&](std::size_t r, std::size_t c) {
      return detail::scaled_to_norm(gaussian_cmat(rng, r, c), detail::uniform(rng, 0.3, 1.0));
    };
    for (int i = 0; i < count; ++i) {
      const OpSpace s = detail::random_space(rng);
      Certificate cert;
      std::size_t m = 2;
      switch (i % 4) {
        case 0:
          cert = cert_conjugation(contraction(3, 2), contraction(2, 3));
          m = 3;
          break;
        case 1:
          cert = cert_direct_sum({cert_conjugation(contraction(2, 2), contraction(2, 2)),
                                  cert_conjugation(contraction(2, 2), contraction(2, 2))});
          m = 4;
          break;
        case 2:
          cert = cert_compose({cert_direct_sum({cert_inclusion(), cert_conjugation(contraction(2, 2), contraction(2, 2))}),
                               cert_conjugation(contraction(2, 4), contraction(4, 2))});
          break;
        default: {
          const auto kraus = detail::random_kraus(rng, 2, 2, detail::uniform(rng, 0.3, 1.0));
          cert = cert_cp(2, 2, detail::kraus_choi(kraus, 2, 2));
        }
      }
      const Tolerances tol = detail::seeded(2000 + i);
      const OpMap phi = map_from_function(s, m, [&](const CMat& x) { return evaluate(cert, x, tol); }, "certified");
      const CertificateCheck chk = check_certificate(cert, phi, tol);
      if (!chk.valid) {
        detail::violation(o, "instance " + std::to_string(i) + ": certificate rejected: " + chk.failure);
        continue;
      }
      for (const auto& r : norm_lower_levels(phi, 2, tol, search_with_restarts(4))) {
        worst = std::max(worst, r.lower_bound / chk.certified_upper);
        if (r.lower_bound > chk.certified_upper + 1e-5) {
          std::ostringstream ss;
          ss << "instance " << i << ": lower " << r.lower_bound << " at level " << r.level << " exceeds "
             << chk.certified_upper;
          detail::violation(o, ss.str());
        }
      }
      ++o.instances;
    }
    if (o.ok) o.detail = "max lower / certified upper " + std::to_string(worst);
  });
}

/// Contractive completely positive maps have cb lower bound <= 1 + 1e-5.
inline Outcome contractive_cp(int count = kInstances) {
  return detail::timed("contractive CP implies cb lower <= 1", [&](Outcome& o) {
    Rng rng(derive_seed(kBaseSeed, 3));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      const std::size_t n = 2 + rng() % 2;
      const std::size_t m = 2 + rng() % 2;
      const auto kraus = detail::random_kraus(rng, n, m, 1.0);
      const OpMap phi = map_from_function(detail::full_algebra(n), m,
                                          [&](const CMat& x) {
                                            CMat y(m, m);
                                            for (const auto& k : kraus) y += k * x * k.adjoint();
                                            return y;
                                          },
                                          "kraus");
      const Tolerances tol = detail::seeded(3000 + i);
      const ChoiReport c = choi_cp_check(phi, tol);
      if (!c.is_contractive_cp) {
        detail::violation(o, "instance " + std::to_string(i) + ": not recognized as contractive CP");
        continue;
      }
      const NormReport r = norm_lower(phi, smith_level(phi), tol, search_with_restarts(2));
      worst = std::max(worst, r.lower_bound);
      if (r.lower_bound > 1.0 + 1e-5) {
        std::ostringstream ss;
        ss << "instance " << i << ": cb lower " << r.lower_bound;
        detail::violation(o, ss.str());
      }
      ++o.instances;
    }
    if (o.ok) o.detail = "max cb lower " + std::to_string(worst);
  });
}

/// P(P(a) b) = P(P(a) P(b)) = P(a P(b)) on gallery projections that are
/// certified completely contractive and real positive on sampled inputs.
inline Outcome condexp_identities(const std::vector<detail::GalleryProjection>& gallery, int count = kInstances) {
  return detail::timed("conditional expectation identities", [&](Outcome& o) {
    std::vector<const detail::GalleryProjection*> pool;
    for (std::size_t i = 0; i < gallery.size(); ++i) {
      if (gallery[i].p_certified && detail::sampled_real_positive(gallery[i].p, 4000 + i)) pool.push_back(&gallery[i]);
    }
    if (pool.empty()) {
      detail::violation(o, "no qualifying projection");
      return;
    }
    Rng rng(derive_seed(kBaseSeed, 4));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      const auto& g = *pool[i % pool.size()];
      const auto& onb = g.p.domain().onb();
      const CMat a = detail::random_element(rng, onb);
      const CMat b = detail::random_element(rng, onb);
      const CMat pa = g.p.apply(a);
      const CMat pb = g.p.apply(b);
      const CMat mid = g.p.apply(pa * pb);
      const double r = std::max((g.p.apply(pa * b) - mid).max_abs(), (g.p.apply(a * pb) - mid).max_abs());
      worst = std::max(worst, r);
      if (r >= 1e-8) detail::violation(o, g.name + ": residual " + detail::sci(r));
      ++o.instances;
    }
    if (o.ok) o.detail = "max residual " + detail::sci(worst) + " on " + detail::names(pool);
  });
}

/// C^2 is contained in Ran P for C = Ker P, on unital gallery projections
/// with P and I - P certified completely contractive.
inline Outcome kernel_products_in_range(const std::vector<detail::GalleryProjection>& gallery, int count = kInstances) {
  return detail::timed("kernel products land in the range", [&](Outcome& o) {
    std::vector<const detail::GalleryProjection*> pool;
    for (const auto& g : gallery)
      if (g.unital && g.p_certified && g.complement_certified) pool.push_back(&g);
    if (pool.empty()) {
      detail::violation(o, "no qualifying projection");
      return;
    }
    std::vector<OpSpace> ranges;
    std::vector<std::vector<CMat>> kernels;
    for (const auto* g : pool) {
      ranges.push_back(range_space(g->p));
      std::vector<CMat> k;
      for (const auto& x : g->p.domain().onb()) k.push_back(x - g->p.apply(x));
      kernels.push_back(k);
    }
    Rng rng(derive_seed(kBaseSeed, 5));
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
      const std::size_t j = i % pool.size();
      const CMat z = detail::random_element(rng, kernels[j]);
      const CMat w = detail::random_element(rng, kernels[j]);
      const double r = ranges[j].residual(z * w);
      worst = std::max(worst, r);
      if (r >= 1e-8) detail::violation(o, pool[j]->name + ": residual " + detail::sci(r));
      ++o.instances;
    }
    if (o.ok) o.detail = "max residual " + detail::sci(worst) + " on " + detail::names(pool);
  });
}

/// On unital completely bicontractive gallery projections the range is a
/// subalgebra exactly when 2P - I is multiplicative.
inline Outcome reflection_dichotomy(const std::vector<detail::GalleryProjection>& gallery, int count = kInstances) {
  return detail::timed("range subalgebra iff 2P - I multiplicative", [&](Outcome& o) {
    std::vector<const detail::GalleryProjection*> pool;
    for (const auto& g : gallery)
      if (g.unital && g.p_certified && g.complement_certified) pool.push_back(&g);
    if (pool.empty()) {
      detail::violation(o, "no qualifying projection");
      return;
    }
    std::vector<double> worst(pool.size(), 0.0);
    Rng rng(derive_seed(kBaseSeed, 6));
    for (int i = 0; i < count; ++i) {
      const std::size_t j = i % pool.size();
      const OpMap& p = pool[j]->p;
      const auto& onb = p.domain().onb();
      const CMat x = detail::random_element(rng, onb);
      const CMat y = detail::random_element(rng, onb);
      auto theta = [&](const CMat& a) { return 2.0 * p.apply(a) - a; };
      worst[j] = std::max(worst[j], (theta(x * y) - theta(x) * theta(y)).max_abs());
      ++o.instances;
    }
    int subalgebras = 0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const bool sub = structure_flags(range_space(pool[j]->p)).is_subalgebra;
      const bool hom = worst[j] < 1e-8;
      subalgebras += sub;
      if (sub != hom) {
        detail::violation(o, pool[j]->name + ": range subalgebra " + (sub ? "true" : "false") +
                                 ", hom residual " + detail::sci(worst[j]));
      }
    }
    if (o.ok) {
      o.detail = std::to_string(subalgebras) + " of " + std::to_string(pool.size()) +
                 " with subalgebra range on " + detail::names(pool);
    }
  });
}

inline std::vector<Outcome> run_all(int count = kInstances) {
  const auto gallery = detail::gallery_projections();
  return {monotone_levels(count),          certificate_soundness(count), contractive_cp(count),
          condexp_identities(gallery, count), kernel_products_in_range(gallery, count),  reflection_dichotomy(gallery, count)};
}

}  // namespace opalg::properties
