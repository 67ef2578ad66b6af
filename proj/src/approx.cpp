#include "gfnn/approx.hpp"

#include <cmath>
#include <stdexcept>

namespace gfnn {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

TargetFunctionSpec target_from_builtin(BuiltinKind kind, double a) {
  TargetFunctionSpec t;
  t.name = to_string(kind);
  switch (kind) {
    case BuiltinKind::tanh:
      t.value = [](double x) { return std::tanh(x); };
      t.derivative = [](double x) { double c = std::tanh(x); return 1.0 - c * c; };
      t.limit_minus_inf = -1.0;
      t.deriv_sup = 1.0;
      t.deriv_bv = 2.0;
      t.deriv_l1 = 2.0;
      break;
    case BuiltinKind::clipped_relu:
      t.breakpoints = {0.0, 1.0};
      t.value = [](double x) { return apply_builtin(BuiltinKind::clipped_relu, 1.0, x); };
      t.derivative = [](double x) { return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0; };
      t.limit_minus_inf = 0.0;
      t.deriv_sup = 1.0;
      t.deriv_bv = 2.0;
      t.deriv_l1 = 1.0;
      break;
    case BuiltinKind::logistic:
      t.value = [](double x) { return logistic(x); };
      t.derivative = [](double x) { double p = logistic(x); return p * (1.0 - p); };
      t.limit_minus_inf = 0.0;
      t.deriv_sup = 0.25;
      t.deriv_bv = 0.5;
      t.deriv_l1 = 1.0;
      break;
    case BuiltinKind::arctan:
      t.value = [](double x) { return std::atan(x); };
      t.derivative = [](double x) { return 1.0 / (1.0 + x * x); };
      t.limit_minus_inf = -M_PI / 2.0;
      t.deriv_sup = 1.0;
      t.deriv_bv = 2.0;
      t.deriv_l1 = M_PI;
      break;
    case BuiltinKind::softsign:
      t.value = [](double x) { return x / (1.0 + std::abs(x)); };
      t.derivative = [](double x) { double u = 1.0 + std::abs(x); return 1.0 / (u * u); };
      t.limit_minus_inf = -1.0;
      t.deriv_sup = 1.0;
      t.deriv_bv = 2.0;
      t.deriv_l1 = 2.0;
      break;
    case BuiltinKind::isru:
      t.value = [a](double x) { return x / std::sqrt(1.0 + a * x * x); };
      t.derivative = [a](double x) { return std::pow(1.0 + a * x * x, -1.5); };
      t.limit_minus_inf = -1.0 / std::sqrt(a);
      t.deriv_sup = 1.0;
      t.deriv_bv = 2.0;
      t.deriv_l1 = 2.0 / std::sqrt(a);
      break;
    case BuiltinKind::clipped_identity:
      t.breakpoints = {-a, a};
      t.value = [a](double x) { return apply_builtin(BuiltinKind::clipped_identity, a, x); };
      t.derivative = [a](double x) { return (x >= -a && x < a) ? 1.0 : 0.0; };
      t.limit_minus_inf = -a;
      t.deriv_sup = 1.0;
      t.deriv_bv = 2.0;
      t.deriv_l1 = 2.0 * a;
      break;
    case BuiltinKind::soft_clip:
      t.value = [a](double x) { return apply_builtin(BuiltinKind::soft_clip, a, x); };
      t.derivative = [a](double x) { return logistic(a * x) - logistic(a * (x - 1.0)); };
      t.limit_minus_inf = 0.0;
      t.deriv_sup = std::tanh(a / 4.0);
      t.deriv_bv = 2.0 * std::tanh(a / 4.0);
      t.deriv_l1 = 1.0;
      break;
  }
  return t;
}

double measured_sup_error(const TanhSeries& series, const TargetFunctionSpec& target,
                          double window_lo, double window_hi, int grid_points) {
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double x = window_lo + (window_hi - window_lo) * i / static_cast<double>(grid_points - 1);
    worst = std::max(worst, std::abs(sigma_eval(series, x) - target.value(x)));
  }
  return worst;
}

ApproxResult approximate_with_params(const TargetFunctionSpec& target, double epsilon,
                                     double window_lo, double window_hi, double alpha,
                                     double beta) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("approximate: epsilon must be strictly positive");
  if (!(window_hi > window_lo))
    throw std::invalid_argument("approximate: empty window");

  const double pad = 10.0 / alpha;
  const double keep_lo = window_lo - pad, keep_hi = window_hi + pad;
  SelfAvoidingSpec spec;
  spec.beta = beta;
  spec.k_min = static_cast<int>(std::floor(keep_lo / beta)) - 1;
  spec.k_max = static_cast<int>(std::ceil(keep_hi / beta)) + 1;
  // One extra leading shift supplies the gap of the first kept term.
  SelfAvoidingSpec padded = spec;
  padded.k_min -= 1;
  std::vector<double> shifts = generate_self_avoiding(padded);
  const std::size_t count = shifts.size() - 1;

  std::vector<double> gap(count), deriv(count);
  std::size_t zero_count = 0;
  for (std::size_t i = 0; i < count; ++i) {
    gap[i] = shifts[i + 1] - shifts[i];
    deriv[i] = target.derivative(shifts[i + 1]);
    if (deriv[i] == 0.0) ++zero_count;
  }
  const double mesh_exact = mesh(shifts);

  // Perturbations keep every coefficient nonzero exactly where rho' vanishes.
  const double d_mag =
      zero_count == 0 ? 0.0 : epsilon / (6.0 * mesh_exact * static_cast<double>(zero_count));
  double d_l1 = 0.0;
  TanhSeries series;
  series.alpha = alpha;
  series.offset = 0.0;
  series.terms.reserve(count);
  double coeff_sum = 0.0;
  bool flip = false;
  for (std::size_t i = 0; i < count; ++i) {
    double d = 0.0;
    if (deriv[i] == 0.0) {
      d = flip ? -d_mag : d_mag;
      flip = !flip;
      d_l1 += d_mag;
    }
    double c = 0.5 * gap[i] * (deriv[i] + d);
    if (c == 0.0) continue;  // underflow guard; drops only epsilon-null mass
    series.terms.push_back({shifts[i + 1], c});
    coeff_sum += c;
  }
  series.offset = target.value(shifts.front()) + coeff_sum;

  // Dropped-tail l1 mass: half the derivative mass outside the kept range.
  double kept_mass = 0.0;
  for (std::size_t i = 0; i < count; ++i) kept_mass += gap[i] * std::abs(deriv[i]);
  series.tail_bound = std::max(0.0, 0.5 * (target.deriv_l1 - kept_mass));

  ApproxResult out;
  out.series = series;
  out.report.epsilon = epsilon;
  out.report.alpha = alpha;
  out.report.beta = beta;
  out.report.mesh = mesh_exact;
  out.report.budget_smoothing = target.deriv_sup * std::log(2.0) / alpha;
  out.report.budget_riemann = mesh_exact * (target.deriv_sup * 1.0 + 1.0 * target.deriv_bv);
  out.report.budget_perturb = mesh_exact * d_l1;
  out.report.window_lo = window_lo;
  out.report.window_hi = window_hi;
  out.report.grid_points = 4001;
  out.report.term_count = series.terms.size();
  out.report.measured_sup_error =
      measured_sup_error(series, target, window_lo, window_hi, out.report.grid_points);
  return out;
}

ApproxResult approximate(const TargetFunctionSpec& target, double epsilon, double window_lo,
                         double window_hi) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("approximate: epsilon must be strictly positive");

  double alpha = 1.0;
  int tries = 0;
  while (target.deriv_sup * std::log(2.0) / alpha >= epsilon / 3.0) {
    alpha *= 2.0;
    if (++tries > 200)
      throw std::runtime_error("approximate: alpha search exhausted its iteration budget");
  }

  // mesh(S_beta) <= beta * (1 + 1/pi), so bound beta analytically first.
  const double riemann_factor = target.deriv_sup * 1.0 + 1.0 * target.deriv_bv;
  double beta = 0.5;
  tries = 0;
  while (riemann_factor > 0.0 &&
         beta * (1.0 + 1.0 / M_PI) * riemann_factor >= epsilon / 3.0) {
    beta *= 0.5;
    if (++tries > 60)
      throw std::runtime_error("approximate: beta search exhausted its iteration budget");
  }
  return approximate_with_params(target, epsilon, window_lo, window_hi, alpha, beta);
}

}  // namespace gfnn
