#ifndef HCONVEX_RANDOM_HPP_
#define HCONVEX_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "hconvex/heisenberg.hpp"

namespace hconvex {

using Rng = std::mt19937_64;

/// Salts separating independent sample streams that share a user seed.
enum class Stream : std::uint64_t
{
  interior = 0xa1,
  dilation = 0xb2,
  horizontal_pair = 0xc3,
  function_segment = 0xd4,
  homogeneity = 0xe5,
  subdifferential = 0xf6,
  ch_pair = 0x107,
  family = 0x118,
  boundary = 0x129,
  radial = 0x13a,
};

/// Engine for sample `index` of `stream`; independent of evaluation order.
Rng stream_rng(std::uint64_t seed, Stream stream, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);

/// exp(U[log lo, log hi]).
double log_uniform(Rng& rng, double lo, double hi);

/// Uniform unit direction in the horizontal plane.
HVec random_direction(Rng& rng);

/// Horizontal vector with uniform direction and log-uniform length in [lo, hi].
HVec random_horizontal(Rng& rng, double lo, double hi);

}  // namespace hconvex

#endif  // HCONVEX_RANDOM_HPP_
