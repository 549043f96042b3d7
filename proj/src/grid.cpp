#include "nlse/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nlse {

GridSpec::GridSpec(int dim, std::array<std::size_t, 3> n, std::array<double, 3> lo, double h)
    : dim_(dim), h_(h), n_(n), lo_(lo) {
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("grid spacing h must be positive");
  }
  for (int axis = 0; axis < 3; ++axis) {
    auto& count = n_[static_cast<std::size_t>(axis)];
    if (axis >= dim) {
      count = 1;
      lo_[static_cast<std::size_t>(axis)] = 0.0;
    } else if (count < 5) {
      throw std::invalid_argument("grid needs at least 5 points per axis, axis " +
                                  std::to_string(axis) + " has " + std::to_string(count));
    }
  }
  strides_ = {n_[1] * n_[2], n_[2], 1};
}

GridSpec GridSpec::from_extents(int dim, std::span<const double> lo, std::span<const double> hi,
                                double h) {
  if (dim < 1 || dim > 3 || lo.size() < static_cast<std::size_t>(dim) ||
      hi.size() < static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("extent lists must have one entry per dimension");
  }
  if (!(h > 0.0)) throw std::invalid_argument("grid spacing h must be positive");
  std::array<std::size_t, 3> n{1, 1, 1};
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  for (int axis = 0; axis < dim; ++axis) {
    const auto a = static_cast<std::size_t>(axis);
    const double span = hi[a] - lo[a];
    const double cells = span / h;
    const double rounded = std::round(cells);
    if (!(span > 0.0) || std::abs(rounded * h - span) > 1e-12 * std::abs(span)) {
      throw std::invalid_argument("extent of axis " + std::to_string(axis) +
                                  " is not an integer multiple of h");
    }
    n[a] = static_cast<std::size_t>(rounded) + 1;
    origin[a] = lo[a];
  }
  return GridSpec(dim, n, origin, h);
}

GridSpec GridSpec::centered(int dim, std::size_t n, double h) {
  const double half = 0.5 * static_cast<double>(n - 1) * h;
  std::array<std::size_t, 3> counts{1, 1, 1};
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  for (int axis = 0; axis < dim; ++axis) {
    counts[static_cast<std::size_t>(axis)] = n;
    lo[static_cast<std::size_t>(axis)] = -half;
  }
  return GridSpec(dim, counts, lo, h);
}

double GridSpec::hi(int axis) const {
  return coord(axis, static_cast<std::ptrdiff_t>(n(axis)) - 1);
}

bool GridSpec::contains(const Index3& idx) const {
  for (std::size_t a = 0; a < 3; ++a) {
    if (idx[a] < 0 || static_cast<std::size_t>(idx[a]) >= n_[a]) return false;
  }
  return true;
}

std::size_t GridSpec::linear_index(const Index3& idx) const {
  if (!contains(idx)) {
    throw std::out_of_range("grid index (" + std::to_string(idx[0]) + "," +
                            std::to_string(idx[1]) + "," + std::to_string(idx[2]) +
                            ") out of bounds");
  }
  return static_cast<std::size_t>(idx[0]) * strides_[0] +
         static_cast<std::size_t>(idx[1]) * strides_[1] + static_cast<std::size_t>(idx[2]);
}

Index3 GridSpec::unravel(std::size_t flat) const {
  if (flat >= size()) throw std::out_of_range("flat index out of bounds");
  Index3 idx{};
  idx[0] = static_cast<std::ptrdiff_t>(flat / strides_[0]);
  flat %= strides_[0];
  idx[1] = static_cast<std::ptrdiff_t>(flat / strides_[1]);
  idx[2] = static_cast<std::ptrdiff_t>(flat % strides_[1]);
  return idx;
}

bool operator==(const GridSpec& a, const GridSpec& b) {
  return a.dim_ == b.dim_ && a.h_ == b.h_ && a.n_ == b.n_ && a.lo_ == b.lo_;
}

ComplexField::ComplexField(GridSpec grid) : grid_(std::move(grid)), values_(grid_.size()) {}

ComplexField::ComplexField(GridSpec grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field value count does not match the grid");
  }
}

PhysParams PhysParams::free(const GridSpec& grid, double a, double s) {
  return PhysParams{a, s, std::vector<double>(grid.size(), 0.0)};
}

void PhysParams::validate(const GridSpec& grid) const {
  if (!(a > 0.0)) throw std::invalid_argument("dispersion coefficient a must be positive");
  if (!std::isfinite(s)) throw std::invalid_argument("nonlinearity s must be finite");
  if (potential.size() != grid.size()) {
    throw std::invalid_argument("potential has " + std::to_string(potential.size()) +
                                " values, grid has " + std::to_string(grid.size()));
  }
}

BoundaryClassification classify_points(const GridSpec& grid) {
  BoundaryClassification cls;
  cls.point_class.assign(grid.size(), PointClass::kInterior);
  const int d = grid.dim();

  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Index3 idx = grid.unravel(p);
    bool on_boundary = false;
    bool near = false;
    Index3 in = idx;
    for (int axis = 0; axis < d; ++axis) {
      const auto a = static_cast<std::size_t>(axis);
      const auto last = static_cast<std::ptrdiff_t>(grid.n(axis)) - 1;
      if (idx[a] == 0) {
        on_boundary = true;
        in[a] = 1;
      } else if (idx[a] == last) {
        on_boundary = true;
        in[a] = last - 1;
      } else if (idx[a] == 1 || idx[a] == last - 1) {
        near = true;
      }
    }
    if (on_boundary) {
      cls.point_class[p] = PointClass::kBoundary;
      cls.boundary.push_back(p);
      cls.inward.push_back(grid.linear_index(in));
    } else if (near) {
      cls.point_class[p] = PointClass::kNearBoundary;
      cls.near_boundary.push_back(p);
    } else {
      cls.interior.push_back(p);
    }
  }
  return cls;
}

FieldNorms field_norms(const ComplexField& psi) {
  FieldNorms norms;
  double max_sq = 0.0;
  double sum = 0.0;
  bool finite = true;
  const auto values = psi.values();
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for reduction(max : max_sq) reduction(+ : sum) reduction(&& : finite)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double m = std::norm(values[static_cast<std::size_t>(i)]);
    finite = finite && std::isfinite(m);
    max_sq = std::max(max_sq, m);
    sum += m;
  }
  norms.finite = finite;
  norms.max_abs_sq = max_sq;
  norms.l2_mass = std::pow(psi.grid().h(), psi.grid().dim()) * sum;
  return norms;
}

}  // namespace nlse
