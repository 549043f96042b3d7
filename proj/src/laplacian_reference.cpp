// Serial reference Laplacians. Every neighbour is looked up through a
// multi-index, so these are slow but easy to audit against the stencil
// tableaux. The OpenMP kernels in laplacian.cpp are tested against them.

#include <stdexcept>
#include <vector>

#include "nlse/laplacian.hpp"

namespace nlse::reference {

namespace {

struct Lookup {
  const GridSpec& grid;
  bool periodic;

  std::size_t at(const Index3& idx, const Index3& offset) const {
    if (periodic) return grid.linear_index(periodic_neighbor(idx, offset, grid));
    Index3 q = idx;
    for (std::size_t a = 0; a < 3; ++a) q[a] += offset[a];
    return grid.linear_index(q);
  }
};

Index3 unit(int axis, std::ptrdiff_t step) {
  Index3 e{0, 0, 0};
  e[static_cast<std::size_t>(axis)] = step;
  return e;
}

std::vector<std::ptrdiff_t> boundary_slot(const BoundaryClassification& cls, std::size_t size) {
  std::vector<std::ptrdiff_t> slot(size, -1);
  for (std::size_t i = 0; i < cls.boundary.size(); ++i) {
    slot[cls.boundary[i]] = static_cast<std::ptrdiff_t>(i);
  }
  return slot;
}

Complex cd2_at(const ComplexField& psi, const Lookup& look, std::size_t p) {
  const GridSpec& g = psi.grid();
  const Index3 idx = g.unravel(p);
  Complex sum = -2.0 * g.dim() * psi[p];
  for (int axis = 0; axis < g.dim(); ++axis) {
    sum += psi[look.at(idx, unit(axis, 1))] + psi[look.at(idx, unit(axis, -1))];
  }
  return sum / (g.h() * g.h());
}

}  // namespace

ComplexField cd_laplacian(const ComplexField& psi, BoundaryKind kind,
                          const BoundaryClassification& cls, std::span<const double> d_coeffs) {
  const GridSpec& g = psi.grid();
  const bool periodic = kind == BoundaryKind::kPeriodic;
  const Lookup look{g, periodic};
  const auto slot = boundary_slot(cls, g.size());
  ComplexField out(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!periodic && slot[p] >= 0) {
      out[p] = d_coeffs[static_cast<std::size_t>(slot[p])] * psi[p] / (g.h() * g.h());
    } else {
      out[p] = cd2_at(psi, look, p);
    }
  }
  return out;
}

ComplexField shoc_laplacian(const ComplexField& psi, BoundaryKind kind,
                            const BoundaryClassification& cls, std::span<const double> d_coeffs) {
  const GridSpec& g = psi.grid();
  const int d = g.dim();
  const bool periodic = kind == BoundaryKind::kPeriodic;
  const Lookup look{g, periodic};
  const auto slot = boundary_slot(cls, g.size());

  // Step 1 everywhere, boundary points from D_b.
  const ComplexField step1 = reference::cd_laplacian(psi, kind, cls, d_coeffs);

  ComplexField out(g);
  const double pairs = d * (d - 1) / 2;
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!periodic && slot[p] >= 0) {
      out[p] = step1[p];
      continue;
    }
    const Index3 idx = g.unravel(p);
    Complex cross = -(16.0 - 2.0 * d) * step1[p];
    for (int axis = 0; axis < d; ++axis) {
      cross += step1[look.at(idx, unit(axis, 1))] + step1[look.at(idx, unit(axis, -1))];
    }
    Complex edges = -4.0 * pairs * psi[p];
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        for (std::ptrdiff_t sa : {-1, 1}) {
          for (std::ptrdiff_t sb : {-1, 1}) {
            Index3 off = unit(a, sa);
            off[static_cast<std::size_t>(b)] = sb;
            edges += psi[look.at(idx, off)];
          }
        }
      }
    }
    out[p] = -cross / 12.0 + edges / (6.0 * g.h() * g.h());
  }
  return out;
}

ComplexField wide_stencil_periodic(const ComplexField& psi) {
  const GridSpec& g = psi.grid();
  const Lookup look{g, true};
  ComplexField out(g);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const Index3 idx = g.unravel(p);
    Complex sum = -30.0 * g.dim() * psi[p];
    for (int axis = 0; axis < g.dim(); ++axis) {
      sum += 16.0 * (psi[look.at(idx, unit(axis, 1))] + psi[look.at(idx, unit(axis, -1))]);
      sum -= psi[look.at(idx, unit(axis, 2))] + psi[look.at(idx, unit(axis, -2))];
    }
    out[p] = sum / (12.0 * g.h() * g.h());
  }
  return out;
}

}  // namespace nlse::reference
