#pragma once

#include <cstdint>
#include <vector>

#include "cgl/marginal.hpp"

namespace cgl {

enum class Dependence { IID, GaussCopulaAR1 };

/// Prescription for one stationary ergodic parameter sequence: the marginal
/// law plus the dependence structure driving the quantile transform.
struct SequenceModel {
  Marginal marginal;
  Dependence dependence = Dependence::IID;
  double rho = 0.0;  // AR(1) coefficient, in (-1, 1)
};

/// The sampled row/column parameters (a_i) and (b_j). Immutable after
/// creation; regeneration from the same seed is bit-identical.
struct ParameterPair {
  std::vector<double> a;
  std::vector<double> b;
  std::uint64_t seed = 0;
};

// Draws a and b from independent substreams of `seed`. IID mode applies the
// inverse CDF to independent uniforms; AR(1) mode drives the quantile
// transform with a stationary standard-normal AR(1) process.
ParameterPair generate(const SequenceModel& model_a, const SequenceModel& model_b,
                       std::size_t m, std::size_t n, std::uint64_t seed);

// Single sequence with a given stream key (used internally and by tests).
std::vector<double> generate_sequence(const SequenceModel& model, std::size_t n,
                                      std::uint64_t stream);

}  // namespace cgl
