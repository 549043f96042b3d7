#include "nlse/integrator.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include "nlse/snapshot.hpp"

namespace nlse {

NlseOperator::NlseOperator(const GridSpec& grid, PhysParams params, SchemeOrder scheme,
                           BoundaryKind kind, DegeneratePolicy policy)
    : grid_(grid),
      params_(std::move(params)),
      scheme_(scheme),
      kind_(kind),
      policy_(policy),
      cls_(classify_points(grid)),
      aux_(grid),
      lap_(grid) {
  params_.validate(grid_);
}

void NlseOperator::evaluate(const ComplexField& psi, ComplexField& dpsi_dt) {
  const bool periodic = kind_ == BoundaryKind::kPeriodic;

  // Step 1 (and the whole CD2 Laplacian): second-order stencil on the interior.
  cd2_kernel(psi, periodic, aux_);
  if (!periodic) {
    coeffs_.d = compute_Db(kind_, psi, aux_, params_, cls_, policy_, nullptr);
    apply_boundary_laplacian(psi, cls_, coeffs_.d, aux_);
  }
  const ComplexField* lap = &aux_;
  if (scheme_ == SchemeOrder::kShoc4) {
    shoc_combine_kernel(psi, aux_, periodic, lap_);
    lap = &lap_;
  }

  const double a = params_.a;
  const double s = params_.s;
  const double* v = params_.potential.data();
  const Complex* in = psi.values().data();
  const Complex* l = lap->values().data();
  Complex* out = dpsi_dt.values().data();
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    const Complex z = a * l[p] + (s * std::norm(in[p]) - v[p]) * in[p];
    out[p] = Complex(-z.imag(), z.real());
  }

  if (periodic) return;
  std::size_t degenerate = 0;
  coeffs_.b = compute_Bb(kind_, psi, dpsi_dt, params_, cls_, policy_, &degenerate);
  coeffs_.degenerate = degenerate;
  degenerate_total_ += degenerate;
  const double scale = a / (grid_.h() * grid_.h());
  for (std::size_t i = 0; i < cls_.boundary.size(); ++i) {
    const std::size_t b = cls_.boundary[i];
    out[b] = Complex(0.0, scale * coeffs_.b[i]) * in[b];
  }
}

ComplexField nlse_rhs(const ComplexField& psi, const PhysParams& params, SchemeOrder scheme,
                      BoundaryKind kind) {
  NlseOperator op(psi.grid(), params, scheme, kind);
  ComplexField out(psi.grid());
  op.evaluate(psi, out);
  return out;
}

Rk4Stepper::Rk4Stepper(NlseOperator op)
    : op_(std::move(op)), slope_(op_.grid()), stage_(op_.grid()), acc_(op_.grid()) {}

namespace {

// acc = base + wa * f (when init) or acc += wa * f; stage = base + ws * f.
void rk_update(const ComplexField& base, const ComplexField& f, double wa, double ws, bool init,
               ComplexField& acc, ComplexField& stage) {
  const Complex* x = base.values().data();
  const Complex* s = f.values().data();
  Complex* a = acc.values().data();
  Complex* st = stage.values().data();
  const auto n = static_cast<std::ptrdiff_t>(base.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    a[p] = (init ? x[p] : a[p]) + wa * s[p];
    st[p] = x[p] + ws * s[p];
  }
}

}  // namespace

void Rk4Stepper::step(ComplexField& psi, double k) {
  op_.evaluate(psi, slope_);
  rk_update(psi, slope_, k / 6.0, k / 2.0, true, acc_, stage_);
  op_.evaluate(stage_, slope_);
  rk_update(psi, slope_, k / 3.0, k / 2.0, false, acc_, stage_);
  op_.evaluate(stage_, slope_);
  rk_update(psi, slope_, k / 3.0, k, false, acc_, stage_);
  op_.evaluate(stage_, slope_);

  const Complex* s = slope_.values().data();
  const Complex* a = acc_.values().data();
  Complex* out = psi.values().data();
  const double w = k / 6.0;
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
  bool finite = true;
#pragma omp parallel for schedule(static) reduction(&& : finite)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    out[p] = a[p] + w * s[p];
    finite = finite && std::isfinite(out[p].real()) && std::isfinite(out[p].imag());
  }
  if (!finite) psi.mark_diverged();
}

ComplexField rk4_step(const ComplexField& psi, double k, const PhysParams& params,
                      SchemeOrder scheme, BoundaryKind kind) {
  Rk4Stepper stepper(NlseOperator(psi.grid(), params, scheme, kind));
  ComplexField out = psi;
  stepper.step(out, k);
  return out;
}

void StepConfig::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("time-step k must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("t_end must be positive");
  }
  if (monitor_every == 0) throw std::invalid_argument("monitor cadence must be at least 1");
}

bool blew_up(const FieldNorms& now, const FieldNorms& initial) {
  if (!now.finite || now.max_abs_sq > kBlowupFactor * initial.max_abs_sq) return true;
  return std::abs(now.l2_mass - initial.l2_mass) > kMassDriftTolerance * initial.l2_mass;
}

void write_run_csv(std::ostream& os, const RunRecord& record) {
  os << "t,max_psi_sq,l2_mass,diverged\n";
  for (const auto& s : record.samples) {
    os << format_double(s.t) << ',' << format_double(s.max_psi_sq) << ','
       << format_double(s.l2_mass) << ',' << (s.diverged ? 1 : 0) << '\n';
  }
}

RunResult integrate(const ComplexField& psi0, const StepConfig& config,
                    const PhysParams& params) {
  config.validate();
  Rk4Stepper stepper(NlseOperator(psi0.grid(), params, config.scheme, config.boundary,
                                  DegeneratePolicy::kZeroFallback));
  RunResult result{RunRecord{}, psi0};
  ComplexField& psi = result.field;
  RunRecord& rec = result.record;

  const FieldNorms initial = field_norms(psi);
  rec.samples.push_back({0.0, initial.max_abs_sq, initial.l2_mass, !initial.finite});
  if (!initial.finite) {
    rec.diverged = true;
    psi.mark_diverged();
    return result;
  }

  const auto total = static_cast<std::size_t>(std::ceil(config.t_end / config.k - 1e-9));
  for (std::size_t n = 1; n <= total; ++n) {
    stepper.step(psi, config.k);
    const FieldNorms now = field_norms(psi);
    const bool bad = psi.diverged() || blew_up(now, initial);
    rec.steps = n;
    if (bad || n % config.monitor_every == 0 || n == total) {
      rec.samples.push_back(
          {static_cast<double>(n) * config.k, now.max_abs_sq, now.l2_mass, bad});
    }
    if (bad) {
      rec.diverged = true;
      psi.mark_diverged();
      break;
    }
  }
  rec.degenerate_boundary = stepper.op().degenerate_total();
  return result;
}

ThresholdResult find_threshold(const ComplexField& psi0, const PhysParams& params,
                               const ThresholdOptions& options) {
  if (!(options.t_end > 0.0)) {
    throw std::invalid_argument("threshold search needs t_end > 0 to classify stability");
  }
  if (options.digits < 1 || options.digits > 12) {
    throw std::invalid_argument("digits must be between 1 and 12");
  }
  const double start = options.k_start > 0.0 ? options.k_start
                       : options.k_lo        ? *options.k_lo
                                             : 0.0;
  if (!(start > 0.0)) throw std::invalid_argument("threshold search needs a positive start k");

  ThresholdResult result;
  result.unit = std::pow(10.0, std::floor(std::log10(start)) - options.digits + 1);
  const double unit = result.unit;

  std::map<long long, bool> seen;
  auto stable = [&](long long n) {
    if (auto it = seen.find(n); it != seen.end()) return it->second;
    StepConfig cfg;
    cfg.k = static_cast<double>(n) * unit;
    cfg.t_end = options.t_end;
    cfg.scheme = options.scheme;
    cfg.boundary = options.boundary;
    cfg.monitor_every = std::numeric_limits<std::size_t>::max();
    const bool ok = !integrate(psi0, cfg, params).record.diverged;
    seen.emplace(n, ok);
    result.probes.push_back({cfg.k, ok});
    return ok;
  };

  auto initial_step = [&](long long n) { return std::max<long long>(1, std::llround(0.02 * static_cast<double>(n))); };

  long long lo = options.k_lo ? static_cast<long long>(std::floor(*options.k_lo / unit + 1e-9))
                              : std::llround(start / unit);
  long long hi = options.k_hi ? static_cast<long long>(std::ceil(*options.k_hi / unit - 1e-9)) : -1;
  if (lo < 1) lo = 1;

  int widen = 0;
  // Make lo stable, walking down with doubling steps.
  if (!stable(lo)) {
    long long step = initial_step(lo);
    hi = (hi < 0 || hi > lo) ? lo : hi;
    while (true) {
      if (++widen > options.max_widen || hi <= 1) {
        throw ThresholdSearchError("no stable time-step found below k = " +
                                   std::to_string(static_cast<double>(hi) * unit));
      }
      const long long cand = std::max<long long>(1, hi - step);
      if (stable(cand)) {
        lo = cand;
        break;
      }
      hi = cand;
      step *= 2;
    }
  }
  // Make hi unstable, walking up with doubling steps.
  if (hi < 0 || hi <= lo || stable(hi)) {
    long long step = initial_step(lo);
    if (hi > lo) lo = hi;
    while (true) {
      if (++widen > options.max_widen) {
        throw ThresholdSearchError("no unstable time-step found up to k = " +
                                   std::to_string(static_cast<double>(lo) * unit));
      }
      const long long cand = lo + step;
      if (!stable(cand)) {
        hi = cand;
        break;
      }
      lo = cand;
      step *= 2;
    }
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (stable(mid) ? lo : hi) = mid;
  }
  result.k_num = static_cast<double>(lo) * unit;
  return result;
}

}  // namespace nlse
