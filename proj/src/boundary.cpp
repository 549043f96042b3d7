#include "nlse/boundary.hpp"

#include <cmath>
#include <string>

namespace nlse {

BoundaryKind parse_boundary_kind(std::string_view name) {
  if (name == "dirichlet") return BoundaryKind::kDirichlet;
  if (name == "msd") return BoundaryKind::kMsd;
  if (name == "l0") return BoundaryKind::kLaplacianZero;
  if (name == "periodic") return BoundaryKind::kPeriodic;
  throw std::invalid_argument("unknown boundary kind '" + std::string(name) +
                              "' (expected dirichlet, msd, l0 or periodic)");
}

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::kDirichlet: return "dirichlet";
    case BoundaryKind::kMsd: return "msd";
    case BoundaryKind::kLaplacianZero: return "l0";
    case BoundaryKind::kPeriodic: return "periodic";
  }
  return "unknown";
}

namespace {

double nonlinear_term(const PhysParams& params, const ComplexField& psi, std::size_t p) {
  return params.s * std::norm(psi[p]) - params.potential[p];
}

// Returns false (and counts) when the inward value is too small for MSD.
bool msd_usable(const Complex& inward, DegeneratePolicy policy, std::size_t point,
                std::size_t* degenerate) {
  if (std::abs(inward) >= kMsdTolerance) return true;
  if (policy == DegeneratePolicy::kThrow) {
    throw DegenerateBoundaryError("MSD boundary point " + std::to_string(point) +
                                  ": |Psi| at inward neighbour below 1e-12");
  }
  if (degenerate != nullptr) ++*degenerate;
  return false;
}

}  // namespace

std::vector<double> compute_Bb(BoundaryKind kind, const ComplexField& psi,
                               const ComplexField& psi_t, const PhysParams& params,
                               const BoundaryClassification& cls, DegeneratePolicy policy,
                               std::size_t* degenerate) {
  const double h = psi.grid().h();
  const double scale = h * h / params.a;
  std::vector<double> out(cls.boundary.size(), 0.0);
  switch (kind) {
    case BoundaryKind::kDirichlet:
    case BoundaryKind::kPeriodic:
      break;
    case BoundaryKind::kLaplacianZero:
      for (std::size_t i = 0; i < cls.boundary.size(); ++i) {
        out[i] = scale * nonlinear_term(params, psi, cls.boundary[i]);
      }
      break;
    case BoundaryKind::kMsd:
      for (std::size_t i = 0; i < cls.boundary.size(); ++i) {
        const std::size_t in = cls.inward[i];
        if (!msd_usable(psi[in], policy, cls.boundary[i], degenerate)) continue;
        out[i] = scale * (psi_t[in] / psi[in]).imag();
      }
      break;
  }
  return out;
}

std::vector<double> compute_Db(BoundaryKind kind, const ComplexField& psi,
                               const ComplexField& lap_inward, const PhysParams& params,
                               const BoundaryClassification& cls, DegeneratePolicy policy,
                               std::size_t* degenerate) {
  const double h = psi.grid().h();
  const double h2 = h * h;
  std::vector<double> out(cls.boundary.size(), 0.0);
  switch (kind) {
    case BoundaryKind::kLaplacianZero:
    case BoundaryKind::kPeriodic:
      break;
    case BoundaryKind::kDirichlet:
      for (std::size_t i = 0; i < cls.boundary.size(); ++i) {
        out[i] = -(h2 / params.a) * nonlinear_term(params, psi, cls.boundary[i]);
      }
      break;
    case BoundaryKind::kMsd:
      for (std::size_t i = 0; i < cls.boundary.size(); ++i) {
        const std::size_t b = cls.boundary[i];
        const std::size_t in = cls.inward[i];
        if (!msd_usable(psi[in], policy, b, degenerate)) continue;
        const double rotation = (Complex(0.0, 1.0) * lap_inward[in] / psi[in]).imag();
        const double drift =
            (nonlinear_term(params, psi, in) - nonlinear_term(params, psi, b)) / params.a;
        out[i] = h2 * (rotation + drift);
      }
      break;
  }
  return out;
}

Index3 periodic_neighbor(const Index3& idx, const Index3& offset, const GridSpec& grid) {
  Index3 out = idx;
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const auto a = static_cast<std::size_t>(axis);
    const auto n = static_cast<std::ptrdiff_t>(grid.n(axis));
    out[a] = ((idx[a] + offset[a]) % n + n) % n;
  }
  return out;
}

}  // namespace nlse
