#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlse {

using Complex = std::complex<double>;

/// Multi-index on a grid of dimension 1..3. Unused trailing axes are 0.
using Index3 = std::array<std::ptrdiff_t, 3>;

/**
 * Regular Cartesian grid with a single spacing h on every axis.
 *
 * Points are stored row-major: axis 0 varies slowest. Axis 0 is x,
 * axis 1 is y, axis 2 is z. Unused axes have extent 1.
 */
class GridSpec {
 public:
  /// Smallest valid grid: 1D, five points, unit spacing.
  GridSpec() : GridSpec(1, {5, 1, 1}, {0.0, 0.0, 0.0}, 1.0) {}

  /// Builds a grid from point counts and the lower corner.
  GridSpec(int dim, std::array<std::size_t, 3> n, std::array<double, 3> lo, double h);

  /// Builds a grid covering [lo, hi] on each axis; (hi - lo)/h must be an
  /// integer to 1e-12 relative.
  static GridSpec from_extents(int dim, std::span<const double> lo,
                               std::span<const double> hi, double h);

  /// Grid of n^dim points centred on the origin.
  static GridSpec centered(int dim, std::size_t n, double h);

  int dim() const { return dim_; }
  double h() const { return h_; }
  std::size_t n(int axis) const { return n_[static_cast<std::size_t>(axis)]; }
  const std::array<std::size_t, 3>& extents() const { return n_; }
  double lo(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
  double hi(int axis) const;
  std::size_t size() const { return n_[0] * n_[1] * n_[2]; }

  /// Physical coordinate of index i along an axis.
  double coord(int axis, std::ptrdiff_t i) const {
    return lo_[static_cast<std::size_t>(axis)] + static_cast<double>(i) * h_;
  }

  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  bool contains(const Index3& idx) const;

  /// Row-major flat index; throws std::out_of_range outside the grid.
  std::size_t linear_index(const Index3& idx) const;
  /// Inverse of linear_index.
  Index3 unravel(std::size_t flat) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b);

 private:
  int dim_;
  double h_;
  std::array<std::size_t, 3> n_;
  std::array<double, 3> lo_;
  std::array<std::size_t, 3> strides_;
};

/// Complex wavefunction sampled on a grid.
class ComplexField {
 public:
  explicit ComplexField(GridSpec grid);
  ComplexField(GridSpec grid, std::vector<Complex> values);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  Complex& at(const Index3& idx) { return values_[grid_.linear_index(idx)]; }
  const Complex& at(const Index3& idx) const { return values_[grid_.linear_index(idx)]; }

  bool diverged() const { return diverged_; }
  void mark_diverged() { diverged_ = true; }

 private:
  GridSpec grid_;
  std::vector<Complex> values_;
  bool diverged_ = false;
};

/// Equation parameters: dispersion a > 0, nonlinearity s, potential V.
struct PhysParams {
  double a = 1.0;
  double s = 0.0;
  std::vector<double> potential;

  /// Zero potential on the given grid.
  static PhysParams free(const GridSpec& grid, double a, double s);

  /// Throws std::invalid_argument if a <= 0 or V does not match the grid.
  void validate(const GridSpec& grid) const;
};

enum class PointClass : unsigned char { kInterior, kNearBoundary, kBoundary };

/**
 * Geometric split of grid points. Boundary points are on any face; each
 * carries an inward neighbour obtained by stepping every offending axis one
 * point inward (faces step along the normal, edges and corners diagonally).
 */
struct BoundaryClassification {
  std::vector<PointClass> point_class;
  std::vector<std::size_t> boundary;  ///< flat indices, ascending
  std::vector<std::size_t> inward;    ///< inward neighbour of boundary[i]
  std::vector<std::size_t> near_boundary;
  std::vector<std::size_t> interior;
};

BoundaryClassification classify_points(const GridSpec& grid);

struct FieldNorms {
  double max_abs_sq = 0.0;
  double l2_mass = 0.0;  ///< h^d * sum |psi|^2
  bool finite = true;
};

FieldNorms field_norms(const ComplexField& psi);

/// Samples f(x, y, z) on every grid point; unused coordinates are 0.
template <class F>
std::vector<double> sample_real(const GridSpec& grid, F&& f) {
  std::vector<double> out(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Index3 idx = grid.unravel(p);
    const double x = grid.coord(0, idx[0]);
    const double y = grid.dim() > 1 ? grid.coord(1, idx[1]) : 0.0;
    const double z = grid.dim() > 2 ? grid.coord(2, idx[2]) : 0.0;
    out[p] = f(x, y, z);
  }
  return out;
}

}  // namespace nlse
