// Copyright 2026 The qconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace qconv {

/// The single generator type threaded through every sampling routine.
/// Helpers below avoid std distributions so that sampled output is identical
/// across standard library implementations.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng &rng);

/// Uniform integer in [0, n) by rejection; n must be positive.
std::size_t uniform_index(Rng &rng, std::size_t n);

/// Standard normal deviate (Box-Muller, one value per call).
double standard_normal(Rng &rng);

/// Derives an independent child seed; used to give sweep cases their own streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace qconv
