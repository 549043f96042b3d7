#include "nlse/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "nlse/snapshot.hpp"

namespace nlse {

ComplexField bright_soliton(const GridSpec& grid, double omega, double s, double a) {
  if (!(omega > 0.0) || !(s > 0.0) || !(a > 0.0)) {
    throw std::invalid_argument("bright soliton needs Omega, s and a positive");
  }
  const double amp = std::sqrt(2.0 * omega / s);
  const double width = std::sqrt(omega / a);
  const auto re = sample_real(grid, [&](double x, double, double) {
    return amp / std::cosh(width * x);
  });
  std::vector<Complex> v(re.begin(), re.end());
  return ComplexField(grid, std::move(v));
}

double RadialProfile::operator()(double r) const {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  if (r >= r_max()) return background;
  if (r <= 0.0) return f.front();
  const double u = r / mesh;
  const auto j = static_cast<std::ptrdiff_t>(u);
  const std::ptrdiff_t s = std::clamp<std::ptrdiff_t>(j - 1, 0, n - 4);
  double sum = 0.0;
  for (std::ptrdiff_t p = 0; p < 4; ++p) {
    double w = 1.0;
    for (std::ptrdiff_t q = 0; q < 4; ++q) {
      if (q != p) w *= (u - static_cast<double>(s + q)) / static_cast<double>(p - q);
    }
    sum += w * f[static_cast<std::size_t>(s + p)];
  }
  return sum;
}

namespace {

// Solves a tridiagonal system in place; rhs receives the solution.
void thomas(std::vector<double>& lower, std::vector<double>& diag, std::vector<double>& upper,
            std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

RadialProfile vortex_profile(int m, double omega, double s, double a, double r_max,
                             double mesh) {
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  if (!(omega / s > 0.0)) throw std::invalid_argument("vortex background needs Omega/s > 0");
  if (!(s < 0.0)) throw std::invalid_argument("vortex profile needs defocusing s < 0");
  if (m == 0) throw std::invalid_argument("vortex charge must be nonzero");
  if (!(mesh > 0.0) || !(r_max > 10.0 * mesh)) {
    throw std::invalid_argument("radial mesh must be positive and much finer than r_max");
  }

  RadialProfile p;
  p.m = m;
  p.mesh = mesh;
  p.background = std::sqrt(omega / s);
  const auto M = static_cast<std::size_t>(std::llround(r_max / mesh));
  const double m2 = static_cast<double>(m) * m;
  const int am = std::abs(m);
  p.f.resize(M + 1);
  for (std::size_t j = 0; j <= M; ++j) {
    p.f[j] = p.background * std::pow(std::tanh(static_cast<double>(j) * mesh), am);
  }
  p.f[0] = 0.0;
  p.f[M] = p.background;

  const std::size_t n = M - 1;
  std::vector<double> lo(n), di(n), up(n), res(n), history;
  const double inv2 = 1.0 / (mesh * mesh);
  auto residual = [&] {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = k + 1;
      const double r = static_cast<double>(j) * mesh;
      const double fj = p.f[j];
      const double val = a * ((p.f[j + 1] - 2.0 * fj + p.f[j - 1]) * inv2 +
                              (p.f[j + 1] - p.f[j - 1]) / (2.0 * r * mesh) - m2 * fj / (r * r)) -
                         omega * fj + s * fj * fj * fj;
      res[k] = -val;
      worst = std::max(worst, std::abs(val));
    }
    return worst;
  };

  constexpr int kMaxIter = 50;
  constexpr double kTol = 1e-8;
  for (int it = 0; it < kMaxIter; ++it) {
    const double worst = residual();
    history.push_back(worst);
    if (worst <= kTol) {
      p.residual = worst;
      return p;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double r = static_cast<double>(k + 1) * mesh;
      const double fj = p.f[k + 1];
      lo[k] = a * (inv2 - 1.0 / (2.0 * r * mesh));
      up[k] = a * (inv2 + 1.0 / (2.0 * r * mesh));
      di[k] = a * (-2.0 * inv2 - m2 / (r * r)) - omega + 3.0 * s * fj * fj;
    }
    thomas(lo, di, up, res);
    for (std::size_t k = 0; k < n; ++k) p.f[k + 1] += res[k];
  }
  throw ProfileError("vortex profile did not converge; last residual " +
                         format_double(history.back()),
                     history);
}

ComplexField vortex_pair(const GridSpec& grid, const RadialProfile& profile, int m, double x0) {
  if (grid.dim() != 2) throw std::invalid_argument("vortex pair needs a 2D grid");
  for (const double c : {-x0, x0}) {
    if (!(c > grid.lo(0) + grid.h() && c < grid.hi(0) - grid.h()) ||
        !(0.0 > grid.lo(1) + grid.h() && 0.0 < grid.hi(1) - grid.h())) {
      throw std::invalid_argument("vortex centre (" + format_double(c) +
                                  ", 0) is not inside the grid");
    }
  }
  ComplexField psi(grid);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Index3 idx = grid.unravel(p);
    const double x = grid.coord(0, idx[0]);
    const double y = grid.coord(1, idx[1]);
    const double r1 = std::hypot(x - x0, y);
    const double r2 = std::hypot(x + x0, y);
    const double phase = m * (std::atan2(y, x - x0) + std::atan2(y, x + x0));
    psi[p] = std::polar(profile(r1) * profile(r2), phase);
  }
  return psi;
}

KickedGaussian kicked_gaussian(const GridSpec& grid, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  ComplexField psi(grid);
  std::vector<double> v(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Index3 idx = grid.unravel(p);
    double r2 = 0.0;
    for (int ax = 0; ax < grid.dim(); ++ax) {
      const double c = grid.coord(ax, idx[static_cast<std::size_t>(ax)]);
      r2 += c * c;
    }
    const double x = grid.coord(0, idx[0]);
    psi[p] = std::polar(std::exp(-r2 / (2.0 * a)), -x / 2.0);
    v[p] = r2 / a;
  }
  return {std::move(psi), std::move(v)};
}

std::vector<std::string> preset_names() { return {"soliton1d", "vortexpair2d", "gaussian3d"}; }

namespace {

GridSpec cube(int dim, double w, double h) {
  const std::array<double, 3> lo{-w, -w, -w};
  const std::array<double, 3> hi{w, w, w};
  return GridSpec::from_extents(dim, std::span<const double>(lo.data(), 3),
                                std::span<const double>(hi.data(), 3), h);
}

}  // namespace

Preset make_preset(std::string_view name, const PresetOptions& options) {
  const double h = options.h.value_or(0.2);
  if (name == "soliton1d") {
    const GridSpec g = cube(1, options.half_width.value_or(10.0), h);
    return {std::string(name), bright_soliton(g, 1.0, 1.0, 1.0), PhysParams::free(g, 1.0, 1.0),
            SchemeOrder::kCd2, BoundaryKind::kDirichlet};
  }
  if (name == "vortexpair2d") {
    const GridSpec g = cube(2, options.half_width.value_or(12.0), h);
    const RadialProfile f = vortex_profile(1, -1.0, -1.0, 1.0);
    return {std::string(name), vortex_pair(g, f, 1, 4.0), PhysParams::free(g, 1.0, -1.0),
            SchemeOrder::kCd2, BoundaryKind::kMsd};
  }
  if (name == "gaussian3d") {
    const GridSpec g = cube(3, options.half_width.value_or(3.0), h);
    KickedGaussian kg = kicked_gaussian(g, 1.0);
    PhysParams params{1.0, 0.0, std::move(kg.potential)};
    return {std::string(name), std::move(kg.psi), std::move(params), SchemeOrder::kCd2,
            BoundaryKind::kDirichlet};
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (expected soliton1d, vortexpair2d or gaussian3d)");
}

}  // namespace nlse
