#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nlse/boundary.hpp"
#include "nlse/grid.hpp"
#include "nlse/laplacian.hpp"

namespace nlse {

/// Runge-Kutta amplification polynomial: exp(p) truncated after p^order/order!.
std::complex<double> amplification(std::complex<double> p, int order);

/// Closed form of |R(k lambda)|^2 for RK4 in terms of |lambda| and Re(lambda).
double amplification_mod_sq(std::complex<double> lambda, double k);

/// Purely imaginary case: 1 + (k|lambda|)^8/576 - (k|lambda|)^6/72.
double amplification_mod_sq_imag(double abs_lambda, double k);

/// RK4 reaches the imaginary axis up to |p| = sqrt(8).
inline constexpr double kRk4ImagLimit = 2.8284271247461900976;

/// Linear-Schrodinger bound h^2/(d sqrt(2) a), times 3/4 for SHOC4.
double linear_bound(SchemeOrder scheme, int dim, double h, double a);

/// Exact rational in twelfths.
struct Twelfths {
  int num = 0;
  double value() const { return num / 12.0; }
  friend auto operator<=>(const Twelfths&, const Twelfths&) = default;
};

/// Gershgorin offsets G for the (dimension, scheme) pair, in twelfths.
std::span<const Twelfths> g_table(int dim, SchemeOrder scheme);

/// L_i = (h^2/a)(s|Psi_i|^2 - V_i) over the whole grid.
std::vector<double> compute_L(const ComplexField& psi, const PhysParams& params);

struct BindingTerm {
  enum class Source { kBoundary, kInterior } source = Source::kInterior;
  std::size_t index = 0;   ///< position in L (interior) or in B (boundary)
  double value = 0.0;      ///< L_i or B_b
  Twelfths g{};            ///< interior only
  double magnitude = 0.0;  ///< the denominator M
};

struct StabilityReport {
  double k_lin = 0.0;
  double k_linz = 0.0;
  BindingTerm binding;
  SchemeOrder scheme = SchemeOrder::kCd2;
  int dim = 1;
  double h = 0.0;
  double a = 0.0;

  std::string binding_description() const;
};

/**
 * k_linz = sqrt(8) h^2 / (a M),  M = max(max_b |B_b|, max_{i,j} |L_i - G_j|).
 *
 * When every L_i <= 0 only the largest G can bind and the scan is O(N);
 * otherwise every (L_i, G_j) pair is examined.
 */
StabilityReport linearized_bound(std::span<const double> L, std::span<const double> B,
                                 std::span<const Twelfths> G, SchemeOrder scheme, int dim,
                                 double h, double a);

/// Always scans every (L_i, G_j) pair.
StabilityReport linearized_bound_exhaustive(std::span<const double> L, std::span<const double> B,
                                            std::span<const Twelfths> G, SchemeOrder scheme,
                                            int dim, double h, double a);

/**
 * Full report for an initial state: L from psi and V, B from the boundary
 * condition evaluated once on psi (MSD uses the interior derivative).
 */
StabilityReport bound_for_state(const ComplexField& psi, const PhysParams& params,
                                SchemeOrder scheme, BoundaryKind kind);

}  // namespace nlse
