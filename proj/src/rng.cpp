// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/rng.hpp"

namespace coopgeo {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Stafford variant 13 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t make_key(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream * kGolden + 0x632be59bd9b4e019ULL));
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : Rng(seed, stream, make_key(seed, stream)) {}

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t key)
    : seed_(seed), stream_(stream), key_(key) {}

Rng::result_type Rng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double Rng::uniform() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

Rng Rng::split(std::uint64_t index) const {
  std::uint64_t child = mix64(key_ ^ mix64(index + 0x2545f4914f6cdd1dULL));
  return Rng(seed_, stream_, child ^ mix64(counter_));
}

}  // namespace coopgeo
