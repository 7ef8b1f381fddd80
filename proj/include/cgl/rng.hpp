#pragma once

#include <cstdint>
#include <cmath>
#include <string_view>
#include <utility>

// Counter-based deterministic random streams. Every draw is a pure function
// of (stream key, counter), so rows, replicas and cells can be generated in
// any order or in parallel with bit-identical results.
//
// The mixer is the SplitMix64 finalizer (Vigna 2015 / Stafford mix13),
// driven in counter mode: output_k = finalize(key + (k+1) * GOLDEN).

namespace cgl::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix(std::uint64_t x) noexcept {
  return finalize(x + kGolden);
}

// k-th word of a stream.
constexpr std::uint64_t at(std::uint64_t stream, std::uint64_t k) noexcept {
  return finalize(stream + (k + 1) * kGolden);
}

// Word keyed by a lattice cell (i, j). Two finalizer rounds decorrelate the
// row and column indices.
constexpr std::uint64_t cell(std::uint64_t stream, std::uint64_t i,
                             std::uint64_t j) noexcept {
  const std::uint64_t h = finalize(stream ^ (i * 0xc2b2ae3d27d4eb4fULL) ^ kGolden);
  return finalize(h ^ (j * 0x165667b19e3779f9ULL));
}

// Map 64 bits to the open interval (0,1): 53-bit mantissa, offset by half an ulp
// so 0 and 1 are unreachable.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
}

inline double uniform_at(std::uint64_t stream, std::uint64_t k) noexcept {
  return to_unit(at(stream, k));
}

inline double uniform_cell(std::uint64_t stream, std::uint64_t i,
                           std::uint64_t j) noexcept {
  return to_unit(cell(stream, i, j));
}

// Standard normal pair via Box-Muller from counters (2k, 2k+1).
inline std::pair<double, double> normal_pair_at(std::uint64_t stream,
                                                std::uint64_t k) noexcept {
  const double u1 = uniform_at(stream, 2 * k);
  const double u2 = uniform_at(stream, 2 * k + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 6.283185307179586476925286766559 * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Derive an independent substream from a master seed and a textual label.
// Stable across versions: finalize(master ^ finalize(fnv1a(label) + GOLDEN)).
constexpr std::uint64_t derive(std::uint64_t master_seed,
                               std::string_view label) noexcept {
  return finalize(master_seed ^ mix(fnv1a(label)));
}

constexpr std::uint64_t derive(std::uint64_t master_seed,
                               std::uint64_t index) noexcept {
  return finalize(master_seed ^ mix(index ^ 0x5851f42d4c957f2dULL));
}

}  // namespace cgl::rng
