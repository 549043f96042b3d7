#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "nlse/boundary.hpp"
#include "nlse/grid.hpp"
#include "nlse/laplacian.hpp"
#include "nlse/stability.hpp"

namespace nlse {

/// Largest grid (in points) for which a dense scheme matrix is formed.
inline constexpr std::size_t kMaxDensePoints = 15 * 15 * 15;

class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * Dense scheme matrix with dPsi/dt = (i a / h^2) A Psi. Row r acts on grid
 * point points[r]; for the full matrix points is 0..N-1, for the interior
 * submatrix it lists the non-boundary points.
 */
struct SchemeMatrix {
  Eigen::MatrixXd values;
  std::vector<std::size_t> points;
  SchemeOrder scheme = SchemeOrder::kCd2;
  BoundaryKind boundary = BoundaryKind::kDirichlet;
  GridSpec grid;

  std::size_t n() const { return points.size(); }

  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::vector<Entry> entries() const;
};

/**
 * Assembles A from the stencils: interior rows carry h^2 lap + L_i on the
 * diagonal, boundary rows the single entry B_b. SHOC4 rows are the product of
 * the two steps, S2 * S1 + E, with D_b in the boundary rows of S1.
 * L is indexed by grid point; B and D by boundary point (ignored when periodic).
 */
SchemeMatrix build_A(SchemeOrder scheme, BoundaryKind boundary, const GridSpec& grid,
                     std::span<const double> L, std::span<const double> B,
                     std::span<const double> D);

/// Deletes boundary rows and columns; throws StructuralError if the rest is not symmetric.
SchemeMatrix extract_interior(const SchemeMatrix& A);

struct GershgorinDisk {
  double center = 0.0;
  double radius = 0.0;
};

std::vector<GershgorinDisk> gershgorin_disks(const Eigen::MatrixXd& m);

/// max over disks of max(|c - r|, |c + r|).
double gershgorin_bound(const Eigen::MatrixXd& m);

/// Disk with the row's own L_i removed from the centre, as exact twelfths.
struct DiskForm {
  Twelfths center_offset;
  Twelfths radius;
  friend auto operator<=>(const DiskForm&, const DiskForm&) = default;
};

/// Converts to twelfths; throws std::domain_error if x is not k/12 to 1e-9.
Twelfths to_twelfths(double x);

/// Distinct (centre - L_i, radius) pairs over all rows; L indexed by grid point.
std::set<DiskForm> unique_forms(const SchemeMatrix& m, std::span<const double> L);

/// G offsets implied by disk forms: -(c + r) and -(c - r) for every form.
std::set<Twelfths> g_from_forms(const std::set<DiskForm>& forms);

/// Published unique disk forms for the interior matrix of each (dimension, scheme).
std::set<DiskForm> reference_disk_table(int dim, SchemeOrder scheme);

/// Eigenvalues of the circulant matrix whose first column is c.
std::vector<std::complex<double>> circulant_eigs(std::span<const double> c);

/// Spectral radius of a symmetric matrix (dense self-adjoint solver).
double max_abs_eig(const Eigen::MatrixXd& m);

/// Coordinate-format dump: one "row col value" line per nonzero.
void write_coordinate(std::ostream& os, const SchemeMatrix& m);

}  // namespace nlse
