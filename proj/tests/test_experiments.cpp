#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nlse/experiments.hpp"
#include "nlse/integrator.hpp"
#include "nlse/stability.hpp"

using namespace nlse;

namespace {

GridSpec line(double w, double h) {
  const double lo[] = {-w}, hi[] = {w};
  return GridSpec::from_extents(1, lo, hi, h);
}

const RadialProfile& unit_vortex() {
  static const RadialProfile f = vortex_profile(1, -1.0, -1.0, 1.0);
  return f;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("bright soliton values") {
  const GridSpec g = line(10.0, 0.2);
  const ComplexField psi = bright_soliton(g, 1.0, 1.0, 1.0);
  CHECK(psi[50].real() == doctest::Approx(std::sqrt(2.0)));
  const double tail = 2.0 / (std::cosh(10.0) * std::cosh(10.0));
  CHECK(std::norm(psi[0]) == doctest::Approx(tail).epsilon(1e-12));
  CHECK(std::norm(psi[100]) == doctest::Approx(tail).epsilon(1e-12));
  CHECK_THROWS_AS(bright_soliton(g, -1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bright_soliton(g, 1.0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("soliton satisfies the steady-state identity to O(h^2)") {
  auto residual = [](double h) {
    const GridSpec g = line(10.0, h);
    const ComplexField f = bright_soliton(g, 1.0, 1.0, 1.0);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
      const double F = f[i].real();
      const double f2 = (f[i + 1].real() - 2.0 * F + f[i - 1].real()) / (h * h);
      worst = std::max(worst, std::abs(-F + f2 + F * F * F));
    }
    return worst;
  };
  CHECK(residual(0.2) / residual(0.1) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("vortex profile") {
  const RadialProfile& f = unit_vortex();
  CHECK(f.f.front() == 0.0);
  CHECK(f(0.0) == 0.0);
  CHECK(std::abs(f.f.back() - 1.0) <= 1e-6);
  CHECK(std::abs(f(f.r_max()) - 1.0) <= 1e-6);
  CHECK(f.residual <= 1e-8);
  CHECK(f.r_max() == doctest::Approx(20.0));
  for (std::size_t j = 1; j < f.f.size(); ++j) REQUIRE(f.f[j] >= f.f[j - 1]);
  const double slope = std::log(f(0.02) / f(0.01)) / std::log(2.0);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.02));
  CHECK_THROWS_AS(vortex_profile(1, 1.0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(vortex_profile(1, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("charge-two profile starts like r^2") {
  const RadialProfile f = vortex_profile(2, -1.0, -1.0, 1.0, 15.0, 2e-3);
  const double slope = std::log(f(0.04) / f(0.02)) / std::log(2.0);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("vortex pair field") {
  const double lo[] = {-12.0, -12.0}, hi[] = {12.0, 12.0};
  const GridSpec g = GridSpec::from_extents(2, lo, hi, 0.2);
  const ComplexField psi = vortex_pair(g, unit_vortex(), 1, 4.0);
  CHECK(std::abs(psi.at({80, 60, 0})) < 1e-12);
  CHECK(std::abs(psi.at({40, 60, 0})) < 1e-12);

  const double far_lo[] = {-30.0, -30.0}, far_hi[] = {30.0, 30.0};
  const GridSpec wide = GridSpec::from_extents(2, far_lo, far_hi, 0.5);
  const ComplexField far = vortex_pair(wide, unit_vortex(), 1, 4.0);
  CHECK(std::norm(far.at({0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::norm(far.at({120, 120, 0})) == doctest::Approx(1.0).epsilon(1e-3));

  // Phase winding around one core, radius 1.
  double total = 0.0;
  const int m = 720;
  auto phase_at = [&](double t) {
    const double x = 4.0 + std::cos(t), y = std::sin(t);
    const std::ptrdiff_t i = std::lround((x + 12.0) / 0.2), j = std::lround((y + 12.0) / 0.2);
    return std::arg(psi.at({i, j, 0}));
  };
  double prev = phase_at(0.0);
  for (int k = 1; k <= m; ++k) {
    const double cur = phase_at(2.0 * std::numbers::pi * k / m);
    total += std::remainder(cur - prev, 2.0 * std::numbers::pi);
    prev = cur;
  }
  CHECK(total == doctest::Approx(2.0 * std::numbers::pi).epsilon(0.01));

  // Exactly two grid-resolved zeros of |Psi|, at the cores.
  std::vector<Index3> minima;
  for (std::ptrdiff_t i = 1; i + 1 < 121; ++i) {
    for (std::ptrdiff_t j = 1; j + 1 < 121; ++j) {
      const double v = std::abs(psi.at({i, j, 0}));
      bool is_min = v < 0.1;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di || dj) is_min = is_min && v < std::abs(psi.at({i + di, j + dj, 0}));
        }
      }
      if (is_min) minima.push_back({i, j, 0});
    }
  }
  REQUIRE(minima.size() == 2);
  for (const auto& q : minima) {
    CHECK(std::abs(std::abs(g.coord(0, q[0])) - 4.0) <= 0.2 + 1e-9);
    CHECK(std::abs(g.coord(1, q[1])) <= 0.2 + 1e-9);
  }

  CHECK_THROWS_AS(vortex_pair(g, unit_vortex(), 1, 12.0), std::invalid_argument);
}

TEST_CASE("kicked Gaussian samples") {
  const double lo[] = {-3.0, -3.0, -3.0}, hi[] = {3.0, 3.0, 3.0};
  const GridSpec g = GridSpec::from_extents(3, lo, hi, 0.2);
  const KickedGaussian kg = kicked_gaussian(g, 1.0);
  CHECK(std::abs(kg.psi.at({15, 15, 15})) == doctest::Approx(1.0));
  CHECK(kg.potential[g.linear_index({30, 30, 30})] == doctest::Approx(27.0));
  CHECK(std::arg(kg.psi.at({20, 15, 15})) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(kicked_gaussian(g, 0.0), std::invalid_argument);
}

TEST_CASE("linear trap run conserves mass and the kick moves the packet") {
  PresetOptions opt;
  opt.half_width = 5.0;
  const Preset p = make_preset("gaussian3d", opt);
  const StabilityReport r = bound_for_state(p.psi0, p.params, SchemeOrder::kCd2, p.boundary);
  StepConfig cfg;
  cfg.k = 0.9 * r.k_linz;
  cfg.t_end = 10.0;
  cfg.monitor_every = 50;
  const RunResult run = integrate(p.psi0, cfg, p.params);
  CHECK_FALSE(run.record.diverged);
  const double m0 = run.record.samples.front().l2_mass;
  for (const auto& s : run.record.samples) CHECK(std::abs(s.l2_mass - m0) / m0 < 1e-6);

  // Centre of mass in x on a 1D trap: goes negative, then back positive.
  const GridSpec g = line(8.0, 0.1);
  KickedGaussian kg = kicked_gaussian(g, 1.0);
  PhysParams params{1.0, 0.0, kg.potential};
  ComplexField psi = kg.psi;
  Rk4Stepper stepper(NlseOperator(g, params, SchemeOrder::kShoc4, BoundaryKind::kDirichlet));
  const double k = 0.5 * linear_bound(SchemeOrder::kShoc4, 1, 0.1, 1.0);
  const double t_max = 2.0 * std::numbers::pi * std::sqrt(0.5) * 2.0;
  bool went_negative = false, came_back = false;
  for (double t = 0.0; t < t_max && !came_back; t += k) {
    stepper.step(psi, k);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      num += g.coord(0, std::ptrdiff_t(i)) * std::norm(psi[i]);
      den += std::norm(psi[i]);
    }
    const double com = num / den;
    went_negative = went_negative || com < -0.05;
    came_back = went_negative && com > 0.05;
  }
  CHECK(went_negative);
  CHECK(came_back);
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 3);
  const Preset s = make_preset("soliton1d");
  CHECK(s.psi0.grid().n(0) == 101);
  CHECK(s.boundary == BoundaryKind::kDirichlet);
  const Preset v = make_preset("vortexpair2d", {8.0, std::nullopt});
  CHECK(v.psi0.grid().n(0) == 81);
  CHECK(v.params.s == -1.0);
  CHECK(v.boundary == BoundaryKind::kMsd);
  const Preset gauss = make_preset("gaussian3d");
  CHECK(gauss.psi0.grid().size() == 31u * 31u * 31u);
  CHECK_THROWS_AS(make_preset("ring"), std::invalid_argument);
}

TEST_CASE("soliton stays bounded at 0.95 k_linz") {
  const Preset s = make_preset("soliton1d");
  const StabilityReport r = bound_for_state(s.psi0, s.params, SchemeOrder::kCd2, s.boundary);
  StepConfig cfg;
  cfg.k = 0.95 * r.k_linz;
  cfg.t_end = 100.0;
  cfg.monitor_every = 10;
  const RunResult run = integrate(s.psi0, cfg, s.params);
  CHECK_FALSE(run.record.diverged);
  for (const auto& m : run.record.samples) CHECK(m.max_psi_sq <= 2.2);
}

}
