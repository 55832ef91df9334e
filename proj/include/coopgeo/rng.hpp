// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>

namespace coopgeo {

//! Counter-based generator: output n is a strong mix of (key, n).
//!
//! Streams are addressed by (seed, stream) so that replication k always sees
//! the same sequence regardless of scheduling. Satisfies
//! UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  //! Uniform on the open interval (0, 1).
  double uniform();

  //! Independent child generator; does not advance this one.
  Rng split(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t key);

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace coopgeo
