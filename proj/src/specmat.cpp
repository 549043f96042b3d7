#include "nlse/specmat.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "nlse/snapshot.hpp"

namespace nlse {

std::vector<SchemeMatrix::Entry> SchemeMatrix::entries() const {
  std::vector<Entry> out;
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (values(r, c) != 0.0) {
        out.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), values(r, c)});
      }
    }
  }
  return out;
}

namespace {

using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplets = std::vector<Eigen::Triplet<double>>;

// Neighbour of point idx by offset, wrapping when periodic.
struct Neighbours {
  const GridSpec& grid;
  bool periodic;

  int at(const Index3& idx, const Index3& off) const {
    if (periodic) return static_cast<int>(grid.linear_index(periodic_neighbor(idx, off, grid)));
    Index3 q = idx;
    for (std::size_t a = 0; a < 3; ++a) q[a] += off[a];
    return static_cast<int>(grid.linear_index(q));
  }
};

Index3 axis_step(int axis, std::ptrdiff_t s) {
  Index3 e{0, 0, 0};
  e[static_cast<std::size_t>(axis)] = s;
  return e;
}

}  // namespace

SchemeMatrix build_A(SchemeOrder scheme, BoundaryKind boundary, const GridSpec& grid,
                     std::span<const double> L, std::span<const double> B,
                     std::span<const double> D) {
  const std::size_t n = grid.size();
  if (n > kMaxDensePoints) {
    throw std::invalid_argument("grid of " + std::to_string(n) +
                                " points is too large for a dense scheme matrix");
  }
  if (L.size() != n) throw std::invalid_argument("L must have one value per grid point");
  const bool periodic = boundary == BoundaryKind::kPeriodic;
  const BoundaryClassification cls = classify_points(grid);
  if (!periodic && (B.size() != cls.boundary.size() || D.size() != cls.boundary.size())) {
    throw std::invalid_argument("B and D must have one value per boundary point");
  }

  std::vector<std::ptrdiff_t> slot(n, -1);
  if (!periodic) {
    for (std::size_t i = 0; i < cls.boundary.size(); ++i) {
      slot[cls.boundary[i]] = static_cast<std::ptrdiff_t>(i);
    }
  }
  const int d = grid.dim();
  const Neighbours nb{grid, periodic};
  const auto N = static_cast<int>(n);

  Triplets s1, s2, edge, bnd;
  for (int p = 0; p < N; ++p) {
    const auto sp = slot[static_cast<std::size_t>(p)];
    if (sp >= 0) {
      s1.emplace_back(p, p, D[static_cast<std::size_t>(sp)]);
      bnd.emplace_back(p, p, B[static_cast<std::size_t>(sp)]);
      continue;
    }
    const Index3 idx = grid.unravel(static_cast<std::size_t>(p));
    s1.emplace_back(p, p, -2.0 * d);
    s2.emplace_back(p, p, (16.0 - 2.0 * d) / 12.0);
    for (int a = 0; a < d; ++a) {
      for (std::ptrdiff_t s : {-1, 1}) {
        const int q = nb.at(idx, axis_step(a, s));
        s1.emplace_back(p, q, 1.0);
        s2.emplace_back(p, q, -1.0 / 12.0);
      }
      for (int b = a + 1; b < d; ++b) {
        for (std::ptrdiff_t sa : {-1, 1}) {
          for (std::ptrdiff_t sb : {-1, 1}) {
            Index3 off = axis_step(a, sa);
            off[static_cast<std::size_t>(b)] = sb;
            edge.emplace_back(p, nb.at(idx, off), 1.0 / 6.0);
          }
        }
        edge.emplace_back(p, p, -4.0 / 6.0);
      }
    }
  }

  Sparse step1(N, N), lap(N, N), boundary_rows(N, N);
  step1.setFromTriplets(s1.begin(), s1.end());
  boundary_rows.setFromTriplets(bnd.begin(), bnd.end());
  if (scheme == SchemeOrder::kCd2) {
    // Interior rows of S1 are the CD2 stencil; drop its boundary rows (D_b).
    Triplets interior;
    for (const auto& t : s1) {
      if (slot[static_cast<std::size_t>(t.row())] < 0) interior.push_back(t);
    }
    lap.setFromTriplets(interior.begin(), interior.end());
  } else {
    Sparse step2(N, N), edges(N, N);
    step2.setFromTriplets(s2.begin(), s2.end());
    edges.setFromTriplets(edge.begin(), edge.end());
    lap = Sparse(step2 * step1) + edges;
  }

  SchemeMatrix m;
  m.values = Eigen::MatrixXd(lap) + Eigen::MatrixXd(boundary_rows);
  for (int p = 0; p < N; ++p) {
    if (slot[static_cast<std::size_t>(p)] < 0) m.values(p, p) += L[static_cast<std::size_t>(p)];
  }
  m.points.resize(n);
  for (std::size_t p = 0; p < n; ++p) m.points[p] = p;
  m.scheme = scheme;
  m.boundary = boundary;
  m.grid = grid;
  return m;
}

SchemeMatrix extract_interior(const SchemeMatrix& A) {
  if (A.boundary == BoundaryKind::kPeriodic) {
    throw std::invalid_argument("periodic matrices have no boundary rows to remove");
  }
  const BoundaryClassification cls = classify_points(A.grid);
  std::vector<Eigen::Index> keep;
  for (std::size_t r = 0; r < A.points.size(); ++r) {
    if (cls.point_class[A.points[r]] != PointClass::kBoundary) {
      keep.push_back(static_cast<Eigen::Index>(r));
    }
  }
  SchemeMatrix out;
  const auto k = static_cast<Eigen::Index>(keep.size());
  out.values.resize(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) out.values(r, c) = A.values(keep[r], keep[c]);
  }
  for (auto r : keep) out.points.push_back(A.points[static_cast<std::size_t>(r)]);
  out.scheme = A.scheme;
  out.boundary = A.boundary;
  out.grid = A.grid;

  const double asym = (out.values - out.values.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    throw StructuralError("interior scheme matrix is not symmetric (max deviation " +
                          format_double(asym) + ")");
  }
  return out;
}

std::vector<GershgorinDisk> gershgorin_disks(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("Gershgorin disks need a square matrix");
  std::vector<GershgorinDisk> disks(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double center = m(r, r);
    disks[static_cast<std::size_t>(r)] = {center, m.row(r).cwiseAbs().sum() - std::abs(center)};
  }
  return disks;
}

double gershgorin_bound(const Eigen::MatrixXd& m) {
  double bound = 0.0;
  for (const auto& disk : gershgorin_disks(m)) {
    bound = std::max({bound, std::abs(disk.center - disk.radius),
                      std::abs(disk.center + disk.radius)});
  }
  return bound;
}

Twelfths to_twelfths(double x) {
  const double scaled = 12.0 * x;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9) {
    throw std::domain_error(format_double(x) + " is not a multiple of 1/12");
  }
  return Twelfths{static_cast<int>(rounded)};
}

std::set<DiskForm> unique_forms(const SchemeMatrix& m, std::span<const double> L) {
  std::set<DiskForm> forms;
  const auto disks = gershgorin_disks(m.values);
  for (std::size_t r = 0; r < disks.size(); ++r) {
    forms.insert(
        {to_twelfths(disks[r].center - L[m.points[r]]), to_twelfths(disks[r].radius)});
  }
  return forms;
}

std::set<Twelfths> g_from_forms(const std::set<DiskForm>& forms) {
  std::set<Twelfths> g;
  for (const auto& f : forms) {
    g.insert({-(f.center_offset.num + f.radius.num)});
    g.insert({-(f.center_offset.num - f.radius.num)});
  }
  return g;
}

std::set<DiskForm> reference_disk_table(int dim, SchemeOrder scheme) {
  auto form = [](int c, int r) { return DiskForm{Twelfths{c}, Twelfths{r}}; };
  const bool cd = scheme == SchemeOrder::kCd2;
  switch (dim) {
    case 1:
      if (cd) return {form(-24, 12), form(-24, 24)};
      return {form(-30, 33), form(-30, 34), form(-29, 17)};
    case 2:
      if (cd) return {form(-48, 24), form(-48, 36), form(-48, 48)};
      return {form(-60, 66), form(-60, 67), form(-60, 68),
              form(-58, 34), form(-59, 50), form(-59, 51)};
    case 3:
      if (cd) return {form(-72, 36), form(-72, 48), form(-72, 60), form(-72, 72)};
      return {form(-90, 99), form(-90, 100), form(-90, 101), form(-90, 102), form(-88, 67),
              form(-88, 68), form(-87, 51),  form(-89, 83),  form(-89, 84),  form(-89, 85)};
    default:
      throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
}

std::vector<std::complex<double>> circulant_eigs(std::span<const double> c) {
  const std::size_t n = c.size();
  std::vector<std::complex<double>> eig(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      // omega_j^m with the exponent reduced mod n keeps the phase accurate.
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * m) % n) /
                           static_cast<double>(n);
      sum += c[(n - m) % n] * std::polar(1.0, phase);
    }
    eig[j] = sum;
  }
  return eig;
}

double max_abs_eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues need a square matrix");
  if (m.size() == 0) return 0.0;
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) throw std::invalid_argument("max_abs_eig needs a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge (n = " +
                             std::to_string(m.rows()) + ")");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void write_coordinate(std::ostream& os, const SchemeMatrix& m) {
  for (const auto& e : m.entries()) {
    os << e.row << ' ' << e.col << ' ' << format_double(e.value) << '\n';
  }
}

}  // namespace nlse
