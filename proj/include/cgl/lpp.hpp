#pragma once

#include <cstdint>
#include <functional>
#include <tuple>
#include <vector>

#include "cgl/sequences.hpp"

namespace cgl {

enum class ModelKind { Exponential, Geometric };

/// Dense row-major matrix of doubles, 0-based.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Full-field materialization is refused beyond this many cells.
inline constexpr std::size_t kMaxFullFieldCells = 400'000'000;

/// Sampled weights W(i,j), i in 1..m, j in 1..n, keyed per cell by
/// (seed, i, j) so any cell can be regenerated independently.
struct WeightGrid {
  ModelKind model = ModelKind::Exponential;
  ParameterPair params;
  std::uint64_t stream = 0;

  std::size_t rows() const { return params.a.size(); }
  std::size_t cols() const { return params.b.size(); }
  // weight of cell (i, j), 1-based
  double weight(std::size_t i, std::size_t j) const;
  // dense m x n matrix of weights (parallel over rows)
  Matrix materialize() const;
};

WeightGrid sample_weights(const ParameterPair& params, ModelKind model);

// ---- last-passage dynamic program ----
// G(i,j) = max(G(i-1,j), G(i,j-1)) + W(i,j), zero boundary.

// serial reference kernel
Matrix last_passage_serial(const Matrix& weights);
// blocked-wavefront OpenMP kernel; bit-identical to the serial one
Matrix last_passage_parallel(const Matrix& weights);
// default entry point (parallel kernel)
Matrix last_passage(const Matrix& weights);

// G(m, n) only, O(cols) memory, weights generated on the fly
double last_passage_corner(const WeightGrid& grid);

// Exhaustive maximization over all directed paths; test oracle for
// small grids (the path count is binomial(m+n-2, m-1)).
double last_passage_bruteforce(const Matrix& weights);

// ---- stationary boundary model ----

/// Boundary weights of the z-parametrized stationary model:
/// exponential rates (a_i + z) on the row axis and (b_j - z) on the column
/// axis, geometric parameters a_i/z and b_j*z.
struct StationaryBoundary {
  double z = 0.0;
  ModelKind model = ModelKind::Exponential;
  std::vector<double> row;  // W(i, 0), i = 1..m
  std::vector<double> col;  // W(0, j), j = 1..n
};

StationaryBoundary sample_boundary(const ParameterPair& params, double z,
                                   ModelKind model);

/// Boundary-augmented field on (0..m) x (0..n) with its increment processes
/// I(i,j) = Ghat(i,j) - Ghat(i-1,j) and J(i,j) = Ghat(i,j) - Ghat(i,j-1).
struct BoundaryField {
  Matrix ghat;  // (m+1) x (n+1)
  StationaryBoundary boundary;
  double I(std::size_t i, std::size_t j) const { return ghat(i, j) - ghat(i - 1, j); }
  double J(std::size_t i, std::size_t j) const { return ghat(i, j) - ghat(i, j - 1); }
};

BoundaryField last_passage_with_boundary(const ParameterPair& params, double z,
                                         ModelKind model);

// I(i, l) for i = 1..m at a fixed column l, O(m) memory (streams columns).
std::vector<double> boundary_increment_column(const ParameterPair& params,
                                              double z, ModelKind model,
                                              std::size_t l);

// Ghat(m, n) only, O(m) memory.
double boundary_corner(const ParameterPair& params, double z, ModelKind model);

// The three-variable involution behind increment stationarity:
// (x, y, w) -> (x - min(x,y) + w, y - min(x,y) + w, min(x,y)).
constexpr std::tuple<double, double, double> apply_F(double x, double y,
                                                     double w) noexcept {
  const double m = x < y ? x : y;
  return {x - m + w, y - m + w, m};
}

}  // namespace cgl
