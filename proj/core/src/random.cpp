#include "hconvex/random.hpp"

#include <cmath>
#include <numbers>

namespace hconvex {

Rng stream_rng(std::uint64_t seed, Stream stream, std::uint64_t index)
{
  const auto s = static_cast<std::uint64_t>(stream);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi)
{
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

HVec random_direction(Rng& rng)
{
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return {std::cos(phi), std::sin(phi)};
}

HVec random_horizontal(Rng& rng, double lo, double hi)
{
  const HVec d = random_direction(rng);
  const double len = log_uniform(rng, lo, hi);
  return {len * d.a, len * d.b};
}

}  // namespace hconvex
