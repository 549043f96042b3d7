#include "nlse/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "nlse/integrator.hpp"
#include "nlse/snapshot.hpp"

namespace nlse {

std::complex<double> amplification(std::complex<double> p, int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("Runge-Kutta order must be 1..4");
  std::complex<double> term = 1.0;
  std::complex<double> sum = 1.0;
  for (int n = 1; n <= order; ++n) {
    term *= p / static_cast<double>(n);
    sum += term;
  }
  return sum;
}

double amplification_mod_sq(std::complex<double> lambda, double k) {
  const double m = std::abs(lambda);
  const double x = lambda.real();
  const double km2 = k * k * m * m;
  const double km4 = km2 * km2;
  const double km6 = km4 * km2;
  const double km8 = km4 * km4;
  return 1.0 + km8 / 576.0 - km6 / 72.0 + (km6 / 6.0 - km4 + 24.0) * (k / 12.0) * x +
         (km4 + 24.0) * (k * k / 12.0) * x * x + (km2 + 4.0) * (k * k * k / 3.0) * x * x * x +
         (2.0 * k * k * k * k / 3.0) * x * x * x * x;
}

double amplification_mod_sq_imag(double abs_lambda, double k) {
  const double y2 = (k * abs_lambda) * (k * abs_lambda);
  const double y6 = y2 * y2 * y2;
  return 1.0 + y6 * y2 / 576.0 - y6 / 72.0;
}

double linear_bound(SchemeOrder scheme, int dim, double h, double a) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (!(h > 0.0) || !(a > 0.0)) throw std::invalid_argument("h and a must be positive");
  const double cd = h * h / (dim * std::sqrt(2.0) * a);
  return scheme == SchemeOrder::kCd2 ? cd : 0.75 * cd;
}

namespace {

constexpr std::array<Twelfths, 4> kG1Cd{{{48}, {36}, {12}, {0}}};
constexpr std::array<Twelfths, 6> kG1Shoc{{{64}, {63}, {46}, {12}, {-3}, {-4}}};
constexpr std::array<Twelfths, 6> kG2Cd{{{96}, {84}, {72}, {24}, {12}, {0}}};
constexpr std::array<Twelfths, 12> kG2Shoc{
    {{128}, {127}, {126}, {110}, {109}, {92}, {24}, {9}, {8}, {-6}, {-7}, {-8}}};
constexpr std::array<Twelfths, 8> kG3Cd{
    {{144}, {132}, {120}, {108}, {36}, {24}, {12}, {0}}};
constexpr std::array<Twelfths, 20> kG3Shoc{{{192}, {191}, {190}, {189}, {174}, {173}, {172},
                                            {156}, {155}, {138}, {36},  {21},  {20},  {6},
                                            {5},   {4},   {-9},  {-10}, {-11}, {-12}}};

}  // namespace

std::span<const Twelfths> g_table(int dim, SchemeOrder scheme) {
  const bool cd = scheme == SchemeOrder::kCd2;
  switch (dim) {
    case 1: return cd ? std::span<const Twelfths>(kG1Cd) : std::span<const Twelfths>(kG1Shoc);
    case 2: return cd ? std::span<const Twelfths>(kG2Cd) : std::span<const Twelfths>(kG2Shoc);
    case 3: return cd ? std::span<const Twelfths>(kG3Cd) : std::span<const Twelfths>(kG3Shoc);
    default: throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
}

std::vector<double> compute_L(const ComplexField& psi, const PhysParams& params) {
  params.validate(psi.grid());
  const double scale = psi.grid().h() * psi.grid().h() / params.a;
  std::vector<double> L(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    L[i] = scale * (params.s * std::norm(psi[i]) - params.potential[i]);
  }
  return L;
}

std::string StabilityReport::binding_description() const {
  if (binding.source == BindingTerm::Source::kBoundary) {
    return "boundary B[" + std::to_string(binding.index) + "] = " + format_double(binding.value);
  }
  return "interior |L[" + std::to_string(binding.index) + "] - G| with L = " +
         format_double(binding.value) + ", G = " + std::to_string(binding.g.num) + "/12";
}

namespace {

StabilityReport finish(BindingTerm binding, SchemeOrder scheme, int dim, double h, double a) {
  if (!(binding.magnitude > 0.0)) {
    throw std::invalid_argument("linearized bound undefined: every |B_b| and |L_i - G| is zero");
  }
  StabilityReport r;
  r.k_lin = linear_bound(scheme, dim, h, a);
  r.k_linz = kRk4ImagLimit * h * h / (a * binding.magnitude);
  r.binding = binding;
  r.scheme = scheme;
  r.dim = dim;
  r.h = h;
  r.a = a;
  return r;
}

void scan_boundary(std::span<const double> B, BindingTerm& best) {
  for (std::size_t b = 0; b < B.size(); ++b) {
    const double m = std::abs(B[b]);
    if (m > best.magnitude) best = {BindingTerm::Source::kBoundary, b, B[b], {}, m};
  }
}

}  // namespace

StabilityReport linearized_bound_exhaustive(std::span<const double> L, std::span<const double> B,
                                            std::span<const Twelfths> G, SchemeOrder scheme,
                                            int dim, double h, double a) {
  BindingTerm best;
  best.magnitude = -1.0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (const Twelfths g : G) {
      const double m = std::abs(L[i] - g.value());
      if (m > best.magnitude) best = {BindingTerm::Source::kInterior, i, L[i], g, m};
    }
  }
  scan_boundary(B, best);
  return finish(best, scheme, dim, h, a);
}

StabilityReport linearized_bound(std::span<const double> L, std::span<const double> B,
                                 std::span<const Twelfths> G, SchemeOrder scheme, int dim,
                                 double h, double a) {
  if (L.empty() || G.empty()) return linearized_bound_exhaustive(L, B, G, scheme, dim, h, a);
  std::size_t min_i = 0;
  double max_l = L[0];
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i] < L[min_i]) min_i = i;
    max_l = std::max(max_l, L[i]);
  }
  Twelfths g_max = G[0];
  Twelfths g_min = G[0];
  for (const Twelfths g : G) {
    g_max = std::max(g_max, g);
    g_min = std::min(g_min, g);
  }
  // With L <= 0 and |min G| <= max G, L_min against max G dominates every pair.
  if (max_l > 0.0 || -g_min.num > g_max.num) {
    return linearized_bound_exhaustive(L, B, G, scheme, dim, h, a);
  }
  BindingTerm best{BindingTerm::Source::kInterior, min_i, L[min_i], g_max,
                   g_max.value() - L[min_i]};
  scan_boundary(B, best);
  return finish(best, scheme, dim, h, a);
}

StabilityReport bound_for_state(const ComplexField& psi, const PhysParams& params,
                                SchemeOrder scheme, BoundaryKind kind) {
  const std::vector<double> L = compute_L(psi, params);
  std::vector<double> B;
  if (kind != BoundaryKind::kPeriodic) {
    NlseOperator op(psi.grid(), params, scheme, kind, DegeneratePolicy::kZeroFallback);
    ComplexField dpsi(psi.grid());
    op.evaluate(psi, dpsi);
    B = op.last_coeffs().b;
  }
  return linearized_bound(L, B, g_table(psi.grid().dim(), scheme), scheme, psi.grid().dim(),
                          psi.grid().h(), params.a);
}

}  // namespace nlse
