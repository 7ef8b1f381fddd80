#include "cgl/sequences.hpp"

#include <cmath>
#include <stdexcept>

#include "cgl/rng.hpp"

namespace cgl {
namespace {

double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

}  // namespace

std::vector<double> generate_sequence(const SequenceModel& model, std::size_t n,
                                      std::uint64_t stream) {
  std::vector<double> out(n);
  if (model.dependence == Dependence::IID) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = model.marginal.quantile(rng::uniform_at(stream, i));
    return out;
  }
  if (!(model.rho > -1.0 && model.rho < 1.0))
    throw std::domain_error("AR(1) rho must lie in (-1, 1)");
  // stationary AR(1) with standard normal marginal: x_0 ~ N(0,1),
  // x_{i+1} = rho x_i + sqrt(1-rho^2) eps_{i+1}
  const double rho = model.rho;
  const double innov = std::sqrt(1.0 - rho * rho);
  double x = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = rng::normal_pair_at(stream, i).first;
    x = (i == 0) ? eps : rho * x + innov * eps;
    out[i] = model.marginal.quantile(std_normal_cdf(x));
  }
  return out;
}

ParameterPair generate(const SequenceModel& model_a, const SequenceModel& model_b,
                       std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::domain_error("grid dimensions must be >= 1");
  ParameterPair p;
  p.seed = seed;
  p.a = generate_sequence(model_a, m, rng::derive(seed, "params/a"));
  p.b = generate_sequence(model_b, n, rng::derive(seed, "params/b"));
  return p;
}

}  // namespace cgl
