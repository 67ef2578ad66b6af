#pragma once
// Uniform approximation of a piecewise-C1 sigmoidal target by a tanh series
// over a self-avoiding shift set. The error budget splits three ways:
//   (a) Heaviside smoothing:  |rho' |_inf * |H - h_alpha|_L1 < eps/3, with
//       |H - h_alpha|_L1 = ln 2 / alpha in closed form,
//   (b) Riemann-sum discretization:
//       mesh * (|rho'|_inf * |h_alpha|_BV + |h_alpha|_inf * |rho'|_BV) < eps/3,
//   (c) coefficient perturbations keeping every c_s nonzero, sized so
//       mesh * sum|d| < eps/3.
// Coefficients: c_k = gap_k * (rho'(s_k) + d_k) / 2 and the constant offset
// absorbs the left tail. The sup-error guarantee is asserted on the requested
// window only; the measured grid error is reported alongside.

#include <functional>
#include <string>
#include <vector>

#include "gfnn/nonlinearity.hpp"
#include "gfnn/self_avoiding.hpp"
#include "gfnn/tanh_series.hpp"

namespace gfnn {

struct TargetFunctionSpec {
  std::string name;
  std::vector<double> breakpoints;  // sorted; derivative may jump here
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // right-hand value at breakpoints
  double limit_minus_inf = 0.0;
  double deriv_sup = 1.0;  // |rho'|_inf
  double deriv_bv = 2.0;   // |rho'|_BV
  double deriv_l1 = 1.0;   // |rho'|_L1
};

// Analytic target specs for the builtin sigmoidal family.
TargetFunctionSpec target_from_builtin(BuiltinKind kind, double a = 1.0);

struct ApproxReport {
  double epsilon = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double mesh = 0.0;
  double budget_smoothing = 0.0;  // |rho'|_inf * ln2 / alpha
  double budget_riemann = 0.0;
  double budget_perturb = 0.0;    // mesh * sum |d|
  double measured_sup_error = 0.0;
  int grid_points = 0;
  double window_lo = 0.0, window_hi = 0.0;
  std::size_t term_count = 0;
};

struct ApproxResult {
  TanhSeries series;
  ApproxReport report;
};

// Chooses alpha by doubling and beta by halving until budgets (a) and (b)
// hold, then builds the truncated series and measures the grid sup error on
// the window. Throws when epsilon <= 0 or the iteration budget is exhausted.
ApproxResult approximate(const TargetFunctionSpec& target, double epsilon,
                         double window_lo, double window_hi);

// Same construction with pinned alpha/beta; used for refinement studies.
ApproxResult approximate_with_params(const TargetFunctionSpec& target, double epsilon,
                                     double window_lo, double window_hi, double alpha,
                                     double beta);

// Dense-grid sup error |series - target| over the window.
double measured_sup_error(const TanhSeries& series, const TargetFunctionSpec& target,
                          double window_lo, double window_hi, int grid_points);

}  // namespace gfnn
