#include "nlse/laplacian.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace nlse {

SchemeOrder parse_scheme(std::string_view name) {
  if (name == "cd2" || name == "cd") return SchemeOrder::kCd2;
  if (name == "shoc4" || name == "2shoc") return SchemeOrder::kShoc4;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected cd2 or shoc4)");
}

std::string_view to_string(SchemeOrder scheme) {
  return scheme == SchemeOrder::kCd2 ? "cd2" : "shoc4";
}

namespace {

// Flat offsets of the +1 / -1 neighbours for every coordinate of one axis,
// plus the index range a kernel visits on that axis.
struct AxisWalk {
  std::vector<std::ptrdiff_t> plus;
  std::vector<std::ptrdiff_t> minus;
  std::ptrdiff_t begin = 0;
  std::ptrdiff_t end = 1;
};

std::array<AxisWalk, 3> make_walks(const GridSpec& grid, bool periodic) {
  std::array<AxisWalk, 3> walks;
  for (int axis = 0; axis < 3; ++axis) {
    auto& w = walks[static_cast<std::size_t>(axis)];
    const auto n = static_cast<std::ptrdiff_t>(grid.n(axis));
    const auto stride = static_cast<std::ptrdiff_t>(grid.stride(axis));
    w.plus.assign(static_cast<std::size_t>(n), 0);
    w.minus.assign(static_cast<std::size_t>(n), 0);
    if (axis >= grid.dim()) continue;
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      const std::ptrdiff_t up = periodic ? (c + 1) % n : c + 1;
      const std::ptrdiff_t down = periodic ? (c - 1 + n) % n : c - 1;
      w.plus[static_cast<std::size_t>(c)] = (up - c) * stride;
      w.minus[static_cast<std::size_t>(c)] = (down - c) * stride;
    }
    w.begin = periodic ? 0 : 1;
    w.end = periodic ? n : n - 1;
  }
  return walks;
}

template <int D>
void cd2_impl(const Complex* psi, Complex* out, const GridSpec& grid,
              const std::array<AxisWalk, 3>& w, double inv_h2) {
  const auto s0 = static_cast<std::ptrdiff_t>(grid.stride(0));
  const auto s1 = static_cast<std::ptrdiff_t>(grid.stride(1));
  constexpr double kCenter = -2.0 * D;
#pragma omp parallel for collapse(2) schedule(static)
  for (std::ptrdiff_t i = w[0].begin; i < w[0].end; ++i) {
    for (std::ptrdiff_t j = w[1].begin; j < w[1].end; ++j) {
      for (std::ptrdiff_t k = w[2].begin; k < w[2].end; ++k) {
        const std::ptrdiff_t p = i * s0 + j * s1 + k;
        const std::ptrdiff_t up[3] = {w[0].plus[i], w[1].plus[j], w[2].plus[k]};
        const std::ptrdiff_t dn[3] = {w[0].minus[i], w[1].minus[j], w[2].minus[k]};
        Complex sum = kCenter * psi[p];
        for (int a = 0; a < D; ++a) sum += psi[p + up[a]] + psi[p + dn[a]];
        out[p] = inv_h2 * sum;
      }
    }
  }
}

template <int D>
void shoc_impl(const Complex* psi, const Complex* aux, Complex* out, const GridSpec& grid,
               const std::array<AxisWalk, 3>& w, double inv_h2) {
  const auto s0 = static_cast<std::ptrdiff_t>(grid.stride(0));
  const auto s1 = static_cast<std::ptrdiff_t>(grid.stride(1));
  constexpr double kAuxCenter = 16.0 - 2.0 * D;
  constexpr double kEdgeCenter = 4.0 * (D * (D - 1) / 2);
  const double edge_scale = inv_h2 / 6.0;
#pragma omp parallel for collapse(2) schedule(static)
  for (std::ptrdiff_t i = w[0].begin; i < w[0].end; ++i) {
    for (std::ptrdiff_t j = w[1].begin; j < w[1].end; ++j) {
      for (std::ptrdiff_t k = w[2].begin; k < w[2].end; ++k) {
        const std::ptrdiff_t p = i * s0 + j * s1 + k;
        const std::ptrdiff_t up[3] = {w[0].plus[i], w[1].plus[j], w[2].plus[k]};
        const std::ptrdiff_t dn[3] = {w[0].minus[i], w[1].minus[j], w[2].minus[k]};
        Complex cross = -kAuxCenter * aux[p];
        for (int a = 0; a < D; ++a) cross += aux[p + up[a]] + aux[p + dn[a]];
        Complex edges = -kEdgeCenter * psi[p];
        for (int a = 0; a < D; ++a) {
          for (int b = a + 1; b < D; ++b) {
            edges += psi[p + up[a] + up[b]] + psi[p + up[a] + dn[b]] +
                     psi[p + dn[a] + up[b]] + psi[p + dn[a] + dn[b]];
          }
        }
        out[p] = (-1.0 / 12.0) * cross + edge_scale * edges;
      }
    }
  }
}

void check_same_grid(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

void cd2_kernel(const ComplexField& psi, bool periodic, ComplexField& out) {
  check_same_grid(psi, out);
  const GridSpec& g = psi.grid();
  const auto walks = make_walks(g, periodic);
  const double inv_h2 = 1.0 / (g.h() * g.h());
  const Complex* in = psi.values().data();
  Complex* o = out.values().data();
  switch (g.dim()) {
    case 1: cd2_impl<1>(in, o, g, walks, inv_h2); break;
    case 2: cd2_impl<2>(in, o, g, walks, inv_h2); break;
    default: cd2_impl<3>(in, o, g, walks, inv_h2); break;
  }
}

void apply_boundary_laplacian(const ComplexField& psi, const BoundaryClassification& cls,
                              std::span<const double> d_coeffs, ComplexField& out) {
  if (d_coeffs.size() != cls.boundary.size()) {
    throw std::invalid_argument("one D_b coefficient per boundary point is required");
  }
  const double inv_h2 = 1.0 / (psi.grid().h() * psi.grid().h());
  for (std::size_t i = 0; i < cls.boundary.size(); ++i) {
    const std::size_t b = cls.boundary[i];
    out[b] = (d_coeffs[i] * inv_h2) * psi[b];
  }
}

void shoc_combine_kernel(const ComplexField& psi, const ComplexField& aux, bool periodic,
                         ComplexField& out) {
  check_same_grid(psi, aux);
  check_same_grid(psi, out);
  const GridSpec& g = psi.grid();
  const auto walks = make_walks(g, periodic);
  const double inv_h2 = 1.0 / (g.h() * g.h());
  const Complex* in = psi.values().data();
  const Complex* d = aux.values().data();
  Complex* o = out.values().data();
  switch (g.dim()) {
    case 1: shoc_impl<1>(in, d, o, g, walks, inv_h2); break;
    case 2: shoc_impl<2>(in, d, o, g, walks, inv_h2); break;
    default: shoc_impl<3>(in, d, o, g, walks, inv_h2); break;
  }
}

void laplacian(SchemeOrder scheme, const ComplexField& psi, BoundaryKind kind,
               const BoundaryClassification& cls, std::span<const double> d_coeffs,
               ComplexField& aux, ComplexField& out) {
  const bool periodic = kind == BoundaryKind::kPeriodic;
  if (scheme == SchemeOrder::kCd2) {
    cd2_kernel(psi, periodic, out);
    if (!periodic) apply_boundary_laplacian(psi, cls, d_coeffs, out);
    return;
  }
  cd2_kernel(psi, periodic, aux);
  if (!periodic) apply_boundary_laplacian(psi, cls, d_coeffs, aux);
  shoc_combine_kernel(psi, aux, periodic, out);
  if (!periodic) apply_boundary_laplacian(psi, cls, d_coeffs, out);
}

ComplexField cd_laplacian(const ComplexField& psi, BoundaryKind kind,
                          const BoundaryClassification& cls, std::span<const double> d_coeffs) {
  ComplexField out(psi.grid());
  ComplexField unused(psi.grid());
  laplacian(SchemeOrder::kCd2, psi, kind, cls, d_coeffs, unused, out);
  return out;
}

ComplexField shoc_laplacian(const ComplexField& psi, BoundaryKind kind,
                            const BoundaryClassification& cls, std::span<const double> d_coeffs) {
  ComplexField out(psi.grid());
  ComplexField aux(psi.grid());
  laplacian(SchemeOrder::kShoc4, psi, kind, cls, d_coeffs, aux, out);
  return out;
}

namespace {

// 1D composition over positions -2..+2 around the target point. Position -1
// may be the boundary, carrying weight d_left on itself in step 1.
RowWeights compose_1d(SchemeOrder scheme, bool left_is_boundary, double d_left) {
  auto step1 = [&](int pos) {
    RowWeights w{};
    if (left_is_boundary && pos == -1) {
      w[1] = d_left;
      return w;
    }
    w[static_cast<std::size_t>(pos + 1)] += 1.0;
    w[static_cast<std::size_t>(pos + 2)] += -2.0;
    w[static_cast<std::size_t>(pos + 3)] += 1.0;
    return w;
  };
  if (scheme == SchemeOrder::kCd2) return step1(0);
  RowWeights out{};
  const std::array<std::pair<int, double>, 3> combine{
      {{-1, -1.0 / 12.0}, {0, 7.0 / 6.0}, {1, -1.0 / 12.0}}};
  for (const auto& [pos, c] : combine) {
    const RowWeights w = step1(pos);
    for (std::size_t m = 0; m < w.size(); ++m) out[m] += c * w[m];
  }
  return out;
}

}  // namespace

RowWeights near_boundary_row_coeffs(SchemeOrder scheme, double d0) {
  return compose_1d(scheme, true, d0);
}

RowWeights interior_row_coeffs(SchemeOrder scheme) { return compose_1d(scheme, false, 0.0); }

}  // namespace nlse
