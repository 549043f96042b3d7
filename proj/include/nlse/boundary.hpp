#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "nlse/grid.hpp"

namespace nlse {

enum class BoundaryKind { kDirichlet, kMsd, kLaplacianZero, kPeriodic };

/// Parses "dirichlet" | "msd" | "l0" | "periodic".
BoundaryKind parse_boundary_kind(std::string_view name);
std::string_view to_string(BoundaryKind kind);

/// Raised when MSD needs Psi at an inward neighbour that is (numerically) zero.
class DegenerateBoundaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What MSD does when |Psi_{b-1}| falls below kMsdTolerance.
enum class DegeneratePolicy { kThrow, kZeroFallback };

inline constexpr double kMsdTolerance = 1e-12;

/**
 * Real per-boundary-point coefficients, aligned with
 * BoundaryClassification::boundary.
 *
 *   dPsi/dt |_b = (i a / h^2) B_b Psi_b
 *   lap Psi_b   = (1 / h^2)   D_b Psi_b
 */
struct BoundaryCoeffs {
  std::vector<double> b;
  std::vector<double> d;
  std::size_t degenerate = 0;  ///< MSD points that hit the zero fallback
};

/**
 * B_b for each boundary point.
 *
 * psi_t must hold dPsi/dt at every inward neighbour (only read there, and only
 * for MSD). Dirichlet gives exact zeros.
 */
std::vector<double> compute_Bb(BoundaryKind kind, const ComplexField& psi,
                               const ComplexField& psi_t, const PhysParams& params,
                               const BoundaryClassification& cls,
                               DegeneratePolicy policy = DegeneratePolicy::kThrow,
                               std::size_t* degenerate = nullptr);

/**
 * D_b for each boundary point.
 *
 * lap_inward must hold the second-order Laplacian at every inward neighbour
 * (only read for MSD). Laplacian-zero gives exact zeros.
 */
std::vector<double> compute_Db(BoundaryKind kind, const ComplexField& psi,
                               const ComplexField& lap_inward, const PhysParams& params,
                               const BoundaryClassification& cls,
                               DegeneratePolicy policy = DegeneratePolicy::kThrow,
                               std::size_t* degenerate = nullptr);

/// Modular wrap of idx + offset on every active axis.
Index3 periodic_neighbor(const Index3& idx, const Index3& offset, const GridSpec& grid);

}  // namespace nlse
