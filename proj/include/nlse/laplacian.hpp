#pragma once

#include <array>
#include <span>
#include <string_view>

#include "nlse/boundary.hpp"
#include "nlse/grid.hpp"

namespace nlse {

enum class SchemeOrder { kCd2, kShoc4 };

/// Parses "cd2" | "shoc4" (aliases "cd", "2shoc").
SchemeOrder parse_scheme(std::string_view name);
std::string_view to_string(SchemeOrder scheme);

// ---------------------------------------------------------------------------
// OpenMP kernels. Non-periodic kernels only write the interior box
// (every index in [1, n-2] on every axis); boundary points are left alone.
// Periodic kernels write every point with wraparound.
// ---------------------------------------------------------------------------

/// out = (1/h^2) * (2d+1)-point Laplacian of psi.
void cd2_kernel(const ComplexField& psi, bool periodic, ComplexField& out);

/// out[b] = D_b psi_b / h^2 on every boundary point.
void apply_boundary_laplacian(const ComplexField& psi, const BoundaryClassification& cls,
                              std::span<const double> d_coeffs, ComplexField& out);

/**
 * Second 2SHOC step. aux must hold the second-order Laplacian (step 1) on every
 * point the stencil reaches, including boundary values D_b psi_b / h^2.
 *
 *   out = -(1/12) (sum_cross aux - (16 - 2d) aux) + (1/(6h^2)) (sum_edges psi - 4 P psi)
 *
 * where P = d(d-1)/2 is the number of axis pairs.
 */
void shoc_combine_kernel(const ComplexField& psi, const ComplexField& aux, bool periodic,
                         ComplexField& out);

// ---------------------------------------------------------------------------
// Operators. Boundary points of the result carry D_b psi_b / h^2; periodic
// grids ignore d_coeffs.
// ---------------------------------------------------------------------------

ComplexField cd_laplacian(const ComplexField& psi, BoundaryKind kind,
                          const BoundaryClassification& cls, std::span<const double> d_coeffs);

ComplexField shoc_laplacian(const ComplexField& psi, BoundaryKind kind,
                            const BoundaryClassification& cls, std::span<const double> d_coeffs);

/// Workspace form; aux receives the step-1 field for SHOC4 and is untouched for CD2.
void laplacian(SchemeOrder scheme, const ComplexField& psi, BoundaryKind kind,
               const BoundaryClassification& cls, std::span<const double> d_coeffs,
               ComplexField& aux, ComplexField& out);

/// Weights of a 1D row on offsets -2..+2, in units of 1/h^2.
using RowWeights = std::array<double, 5>;

/// Combined weights at the point next to the left boundary (offset -1 is the
/// boundary point whose Laplacian coefficient is d0; offset -2 is off-grid).
RowWeights near_boundary_row_coeffs(SchemeOrder scheme, double d0);
RowWeights interior_row_coeffs(SchemeOrder scheme);

namespace reference {

// Serial, index-by-index versions of the operators above, kept for testing
// and benchmarking the kernels.
ComplexField cd_laplacian(const ComplexField& psi, BoundaryKind kind,
                          const BoundaryClassification& cls, std::span<const double> d_coeffs);
ComplexField shoc_laplacian(const ComplexField& psi, BoundaryKind kind,
                            const BoundaryClassification& cls, std::span<const double> d_coeffs);

/// Wide five-point-per-axis fourth-order stencil with periodic wrap.
ComplexField wide_stencil_periodic(const ComplexField& psi);

}  // namespace reference

}  // namespace nlse
