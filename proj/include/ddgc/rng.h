// Copyright 2026 The DDGC Authors
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

#ifndef DDGC_RNG_H_
#define DDGC_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace ddgc {

using Rng = std::mt19937_64;

// SplitMix64 finalizer applied to (root, stream). Gives independent,
// reproducible per-episode streams from a single run seed.
std::uint64_t DeriveSeed(std::uint64_t root, std::uint64_t stream);

// Uniform in [0, 1) built from the top 53 bits, identical on every platform.
double UniformDouble(Rng& rng);

// Inverse-CDF draw from an (unnormalized) non-negative weight vector.
int SampleIndex(std::span<const double> weights, Rng& rng);

}  // namespace ddgc

#endif  // DDGC_RNG_H_
