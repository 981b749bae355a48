// Copyright 2026 The qcgeom Authors
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

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string_view>

#include "qcgeom/pauli_algebra.hpp"

namespace qcgeom {

/// Named random sub-streams. Every stream is derived from one 64-bit seed so
/// a component can be reproduced in isolation.
enum class Stream : std::uint64_t {
  kOptimizer = 0x6f7074696d697a65ULL,
  kSampler = 0x73616d706c657273ULL,
  kSchedule = 0x7363686564756c65ULL,
  kTest = 0x7465737473747265ULL,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Generator for (seed, stream, index); distinct triples give independent
/// streams.
inline std::mt19937_64 make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  const std::uint64_t s =
      splitmix64(splitmix64(seed ^ static_cast<std::uint64_t>(stream)) + index);
  return std::mt19937_64(s);
}

inline Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = normal(rng);
  return v;
}

/// Uniform direction with radius drawn uniformly in [0, max_radius].
inline CoeffVector random_coeffs(std::mt19937_64& rng, int n, double max_radius) {
  Eigen::VectorXd v = gaussian_vector(rng, static_cast<Eigen::Index>(tangent_dim(n)));
  std::uniform_real_distribution<double> radius(0.0, max_radius);
  const double nv = v.norm();
  if (nv > 0) v *= radius(rng) / nv;
  return CoeffVector(n, std::move(v));
}

/// Random traceless Hermitian 2^n x 2^n matrix with Gaussian entries.
inline CMatrix random_traceless_hermitian(std::mt19937_64& rng, int n) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix a(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) a(r, c) = Complex(normal(rng), normal(rng));
  }
  CMatrix h = 0.5 * (a + a.adjoint());
  h.diagonal().array() -= h.trace() / static_cast<double>(d);
  return h;
}

}  // namespace qcgeom
