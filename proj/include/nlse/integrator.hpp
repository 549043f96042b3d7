#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nlse/boundary.hpp"
#include "nlse/grid.hpp"
#include "nlse/laplacian.hpp"

namespace nlse {

/**
 * Right-hand side of the NLSE, dPsi/dt = i (a lap Psi - V Psi + s |Psi|^2 Psi).
 *
 * Interior and near-boundary points use the selected Laplacian. Boundary
 * points are then overwritten with (i a / h^2) B_b Psi_b; for MSD, B_b is read
 * from the interior derivative at the inward neighbour, so the interior pass
 * always runs first. Holds workspace, so one instance per thread.
 */
class NlseOperator {
 public:
  NlseOperator(const GridSpec& grid, PhysParams params, SchemeOrder scheme, BoundaryKind kind,
               DegeneratePolicy policy = DegeneratePolicy::kThrow);

  void evaluate(const ComplexField& psi, ComplexField& dpsi_dt);

  const GridSpec& grid() const { return grid_; }
  const PhysParams& params() const { return params_; }
  SchemeOrder scheme() const { return scheme_; }
  BoundaryKind kind() const { return kind_; }
  const BoundaryClassification& classification() const { return cls_; }

  /// B_b and D_b used by the most recent evaluate().
  const BoundaryCoeffs& last_coeffs() const { return coeffs_; }
  /// MSD points that fell back to B_b = 0, summed over all evaluations.
  std::size_t degenerate_total() const { return degenerate_total_; }

 private:
  GridSpec grid_;
  PhysParams params_;
  SchemeOrder scheme_;
  BoundaryKind kind_;
  DegeneratePolicy policy_;
  BoundaryClassification cls_;
  ComplexField aux_;
  ComplexField lap_;
  BoundaryCoeffs coeffs_;
  std::size_t degenerate_total_ = 0;
};

ComplexField nlse_rhs(const ComplexField& psi, const PhysParams& params, SchemeOrder scheme,
                      BoundaryKind kind);

/// Classic four-stage RK4 with reusable stage storage.
class Rk4Stepper {
 public:
  explicit Rk4Stepper(NlseOperator op);

  /// Advances psi by k in place; marks the field diverged on non-finite output.
  void step(ComplexField& psi, double k);

  NlseOperator& op() { return op_; }

 private:
  NlseOperator op_;
  ComplexField slope_;
  ComplexField stage_;
  ComplexField acc_;
};

ComplexField rk4_step(const ComplexField& psi, double k, const PhysParams& params,
                      SchemeOrder scheme, BoundaryKind kind);

struct StepConfig {
  double k = 0.0;
  double t_end = 0.0;
  SchemeOrder scheme = SchemeOrder::kCd2;
  BoundaryKind boundary = BoundaryKind::kDirichlet;
  std::size_t monitor_every = 1;

  void validate() const;
};

/// Growth of max|Psi|^2 beyond this factor of its initial value counts as blow-up.
inline constexpr double kBlowupFactor = 10.0;
/// Relative change of the L2 mass that counts as instability.
inline constexpr double kMassDriftTolerance = 1e-2;

/**
 * Instability detector: any non-finite value, max|Psi|^2 above kBlowupFactor
 * times its initial value, or the L2 mass off its initial value by more than
 * kMassDriftTolerance. The mass test catches grid-scale noise that a focusing
 * nonlinearity saturates before max|Psi|^2 moves.
 */
bool blew_up(const FieldNorms& now, const FieldNorms& initial);

struct MonitorSample {
  double t = 0.0;
  double max_psi_sq = 0.0;
  double l2_mass = 0.0;
  bool diverged = false;
};

struct RunRecord {
  std::vector<MonitorSample> samples;
  bool diverged = false;
  std::size_t steps = 0;
  std::size_t degenerate_boundary = 0;
};

/// CSV with header t,max_psi_sq,l2_mass,diverged.
void write_run_csv(std::ostream& os, const RunRecord& record);

struct RunResult {
  RunRecord record;
  ComplexField field;
};

/// Fixed-k RK4 to t_end (ceil(t_end/k) steps) or until blow-up.
RunResult integrate(const ComplexField& psi0, const StepConfig& config, const PhysParams& params);

class ThresholdSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThresholdOptions {
  SchemeOrder scheme = SchemeOrder::kCd2;
  BoundaryKind boundary = BoundaryKind::kDirichlet;
  double t_end = 100.0;
  int digits = 4;
  double k_start = 0.0;             ///< usually k_linz; sets the digit grid
  std::optional<double> k_lo;       ///< expected stable
  std::optional<double> k_hi;       ///< expected unstable
  int max_widen = 30;
};

struct ThresholdProbe {
  double k = 0.0;
  bool stable = false;
};

struct ThresholdResult {
  double k_num = 0.0;
  double unit = 0.0;  ///< resolution: one unit in the last requested digit
  std::vector<ThresholdProbe> probes;
};

/**
 * Largest stable k on the grid of `digits` significant figures: bracket from
 * k_start with doubling steps, then bisect. A probe is stable when a run to
 * t_end never trips blew_up().
 */
ThresholdResult find_threshold(const ComplexField& psi0, const PhysParams& params,
                               const ThresholdOptions& options);

}  // namespace nlse
