#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlse/boundary.hpp"
#include "nlse/grid.hpp"
#include "nlse/laplacian.hpp"

namespace nlse {

/// Psi(x, 0) = sqrt(2 Omega / s) sech(sqrt(Omega / a) x); needs Omega, s, a > 0.
ComplexField bright_soliton(const GridSpec& grid, double omega, double s, double a);

class ProfileError : public std::runtime_error {
 public:
  ProfileError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

/**
 * Radial vortex core f(r) on r = j * mesh, j = 0..M, solving
 *   a (f'' + f'/r - m^2 f / r^2) - Omega f + s f^3 = 0,  f(0) = 0,  f(R_max) = sqrt(Omega/s).
 */
struct RadialProfile {
  int m = 1;
  double mesh = 1e-3;
  double background = 1.0;
  double residual = 0.0;  ///< max-norm of the discrete equation at convergence
  std::vector<double> f;

  double r_max() const { return mesh * static_cast<double>(f.size() - 1); }
  /// Cubic interpolation; background beyond r_max.
  double operator()(double r) const;
};

/// Newton relaxation from a tanh guess. Needs Omega/s > 0 and s/a < 0.
RadialProfile vortex_profile(int m, double omega, double s, double a, double r_max = 20.0,
                             double mesh = 1e-3);

/// f(r1) f(r2) exp(i m (theta1 + theta2)) with cores at (+-x0, 0).
ComplexField vortex_pair(const GridSpec& grid, const RadialProfile& profile, int m, double x0);

struct KickedGaussian {
  ComplexField psi;
  std::vector<double> potential;
};

/// Psi = exp(-r^2 / (2a)) exp(-i x / 2), V = r^2 / a.
KickedGaussian kicked_gaussian(const GridSpec& grid, double a);

/// Named initial state with the run settings that go with it.
struct Preset {
  std::string name;
  ComplexField psi0;
  PhysParams params;
  SchemeOrder scheme = SchemeOrder::kCd2;
  BoundaryKind boundary = BoundaryKind::kDirichlet;
};

struct PresetOptions {
  std::optional<double> half_width;  ///< domain [-w, w]^d
  std::optional<double> h;
};

std::vector<std::string> preset_names();

/// "soliton1d", "vortexpair2d" or "gaussian3d"; throws std::invalid_argument otherwise.
Preset make_preset(std::string_view name, const PresetOptions& options = {});

}  // namespace nlse
