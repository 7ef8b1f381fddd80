#include "cgl/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cgl/rng.hpp"

namespace cgl {
namespace {

constexpr std::size_t kBlock = 256;

void check_cell_cap(std::size_t rows, std::size_t cols) {
  if (rows != 0 && rows * cols / rows != cols)
    throw std::length_error("grid size overflows");
  if (rows * cols > kMaxFullFieldCells)
    throw std::length_error("full-field mode capped at 4e8 cells; use the "
                            "memory-lean corner evaluation");
}

double exp_draw(double u, double rate) { return -std::log(u) / rate; }

double geom_draw(double u, double q) {
  // P(W >= k) = q^k, support {0, 1, 2, ...}
  return std::floor(std::log(u) / std::log(q));
}

// Kahan-compensated prefix sums for the boundary rays.
std::vector<double> prefix_sum(const std::vector<double>& w) {
  std::vector<double> out(w.size() + 1, 0.0);
  double s = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double y = w[i] - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
    out[i + 1] = s;
  }
  return out;
}

}  // namespace

double WeightGrid::weight(std::size_t i, std::size_t j) const {
  const double u = rng::uniform_cell(stream, i, j);
  const double ai = params.a[i - 1], bj = params.b[j - 1];
  if (model == ModelKind::Exponential) {
    const double rate = ai + bj;
    if (!(rate > 0)) throw std::invalid_argument("exponential rate a_i + b_j must be positive");
    return exp_draw(u, rate);
  }
  const double q = ai * bj;
  if (!(q > 0) || q >= 1.0)
    throw std::invalid_argument("geometric parameter a_i * b_j must lie in (0, 1)");
  return geom_draw(u, q);
}

Matrix WeightGrid::materialize() const {
  const std::size_t m = rows(), n = cols();
  check_cell_cap(m, n);
  Matrix w(m, n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(m); ++i)
    for (std::size_t j = 0; j < n; ++j)
      w(i, j) = weight(std::size_t(i) + 1, j + 1);
  return w;
}

WeightGrid sample_weights(const ParameterPair& params, ModelKind model) {
  if (params.a.empty() || params.b.empty())
    throw std::invalid_argument("parameter sequences must be nonempty");
  WeightGrid g;
  g.model = model;
  g.params = params;
  g.stream = rng::derive(params.seed, "weights");
  // validate parameters eagerly on one cell
  (void)g.weight(1, 1);
  return g;
}

Matrix last_passage_serial(const Matrix& w) {
  Matrix g(w.rows, w.cols);
  for (std::size_t i = 0; i < w.rows; ++i)
    for (std::size_t j = 0; j < w.cols; ++j) {
      const double up = i ? g(i - 1, j) : 0.0;
      const double left = j ? g(i, j - 1) : 0.0;
      g(i, j) = std::max(up, left) + w(i, j);
    }
  return g;
}

Matrix last_passage_parallel(const Matrix& w) {
  Matrix g(w.rows, w.cols);
  const std::size_t nbi = (w.rows + kBlock - 1) / kBlock;
  const std::size_t nbj = (w.cols + kBlock - 1) / kBlock;
  for (std::size_t diag = 0; diag < nbi + nbj - 1; ++diag) {
    const std::size_t bi_lo = diag >= nbj ? diag - nbj + 1 : 0;
    const std::size_t bi_hi = std::min(diag, nbi - 1);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t bi = std::ptrdiff_t(bi_lo); bi <= std::ptrdiff_t(bi_hi); ++bi) {
      const std::size_t bj = diag - std::size_t(bi);
      const std::size_t i0 = std::size_t(bi) * kBlock, i1 = std::min(i0 + kBlock, w.rows);
      const std::size_t j0 = bj * kBlock, j1 = std::min(j0 + kBlock, w.cols);
      for (std::size_t i = i0; i < i1; ++i)
        for (std::size_t j = j0; j < j1; ++j) {
          const double up = i ? g(i - 1, j) : 0.0;
          const double left = j ? g(i, j - 1) : 0.0;
          g(i, j) = std::max(up, left) + w(i, j);
        }
    }
  }
  return g;
}

Matrix last_passage(const Matrix& weights) { return last_passage_parallel(weights); }

double last_passage_corner(const WeightGrid& grid) {
  const std::size_t m = grid.rows(), n = grid.cols();
  std::vector<double> row(n, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    double left = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double v = std::max(left, row[j - 1]) + grid.weight(i, j);
      row[j - 1] = v;
      left = v;
    }
  }
  return row[n - 1];
}

double last_passage_bruteforce(const Matrix& w) {
  double best = -kInf;
  // enumerate every directed path by depth-first search
  std::function<void(std::size_t, std::size_t, double)> walk =
      [&](std::size_t i, std::size_t j, double acc) {
        acc += w(i, j);
        if (i + 1 == w.rows && j + 1 == w.cols) {
          best = std::max(best, acc);
          return;
        }
        if (i + 1 < w.rows) walk(i + 1, j, acc);
        if (j + 1 < w.cols) walk(i, j + 1, acc);
      };
  walk(0, 0, 0.0);
  return best;
}

StationaryBoundary sample_boundary(const ParameterPair& params, double z,
                                   ModelKind model) {
  StationaryBoundary sb;
  sb.z = z;
  sb.model = model;
  const std::uint64_t rs = rng::derive(params.seed, "boundary/row");
  const std::uint64_t cs = rng::derive(params.seed, "boundary/col");
  sb.row.resize(params.a.size());
  sb.col.resize(params.b.size());
  for (std::size_t i = 0; i < params.a.size(); ++i) {
    const double u = rng::uniform_at(rs, i);
    if (model == ModelKind::Exponential) {
      const double rate = params.a[i] + z;
      if (!(rate > 0)) throw std::domain_error("z outside admissible interval: a_i + z <= 0");
      sb.row[i] = exp_draw(u, rate);
    } else {
      const double q = params.a[i] / z;
      if (!(q > 0) || q >= 1.0) throw std::domain_error("z outside admissible interval: a_i/z not in (0,1)");
      sb.row[i] = geom_draw(u, q);
    }
  }
  for (std::size_t j = 0; j < params.b.size(); ++j) {
    const double u = rng::uniform_at(cs, j);
    if (model == ModelKind::Exponential) {
      const double rate = params.b[j] - z;
      if (!(rate > 0)) throw std::domain_error("z outside admissible interval: b_j - z <= 0");
      sb.col[j] = exp_draw(u, rate);
    } else {
      const double q = params.b[j] * z;
      if (!(q > 0) || q >= 1.0) throw std::domain_error("z outside admissible interval: b_j*z not in (0,1)");
      sb.col[j] = geom_draw(u, q);
    }
  }
  return sb;
}

BoundaryField last_passage_with_boundary(const ParameterPair& params, double z,
                                         ModelKind model) {
  const std::size_t m = params.a.size(), n = params.b.size();
  check_cell_cap(m + 1, n + 1);
  BoundaryField f;
  f.boundary = sample_boundary(params, z, model);
  const WeightGrid grid = sample_weights(params, model);
  f.ghat = Matrix(m + 1, n + 1);
  const std::vector<double> prow = prefix_sum(f.boundary.row);
  const std::vector<double> pcol = prefix_sum(f.boundary.col);
  for (std::size_t i = 0; i <= m; ++i) f.ghat(i, 0) = prow[i];
  for (std::size_t j = 0; j <= n; ++j) f.ghat(0, j) = pcol[j];
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      f.ghat(i, j) = std::max(f.ghat(i - 1, j), f.ghat(i, j - 1)) + grid.weight(i, j);
  return f;
}

namespace {

// Ghat(0..m, l) by streaming columns; O(m) memory.
std::vector<double> boundary_column(const ParameterPair& params, double z,
                                    ModelKind model, std::size_t l) {
  const std::size_t m = params.a.size();
  if (l > params.b.size()) throw std::out_of_range("column index beyond grid");
  const StationaryBoundary sb = sample_boundary(params, z, model);
  const WeightGrid grid = sample_weights(params, model);
  std::vector<double> col = prefix_sum(sb.row);  // Ghat(i, 0)
  double top = 0.0, comp = 0.0;
  for (std::size_t j = 1; j <= l; ++j) {
    const double y = sb.col[j - 1] - comp;
    const double t = top + y;
    comp = (t - top) - y;
    top = t;  // Ghat(0, j), compensated
    col[0] = top;
    for (std::size_t i = 1; i <= m; ++i)
      col[i] = std::max(col[i - 1], col[i]) + grid.weight(i, j);
  }
  return col;
}

}  // namespace

std::vector<double> boundary_increment_column(const ParameterPair& params,
                                              double z, ModelKind model,
                                              std::size_t l) {
  const std::vector<double> col = boundary_column(params, z, model, l);
  std::vector<double> inc(col.size() - 1);
  for (std::size_t i = 1; i < col.size(); ++i) inc[i - 1] = col[i] - col[i - 1];
  return inc;
}

double boundary_corner(const ParameterPair& params, double z, ModelKind model) {
  return boundary_column(params, z, model, params.b.size()).back();
}

}  // namespace cgl
