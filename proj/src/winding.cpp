#include "gfnn/winding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gfnn {

namespace {

double dist_to_int(double x) { return std::abs(x - std::round(x)); }

struct Frame {
  int d = 0, k = 0;
  std::vector<double> alpha;        // values reordered per decomp.order
  std::vector<double> basis;        // first k of alpha
  std::vector<std::vector<double>> Qd;  // Q as doubles
  std::vector<double> target_img;   // (Q (a .* target))_p
};

Frame make_frame(const std::vector<double>& values, const QDecomposition& decomp,
                 const std::vector<double>& target) {
  Frame f;
  f.d = static_cast<int>(values.size());
  f.k = decomp.k;
  if (static_cast<int>(decomp.Q.size()) != f.d || f.k < 1 || f.k > f.d)
    throw std::invalid_argument("winding: decomposition shape does not match the values");
  if (static_cast<int>(target.size()) != f.k)
    throw std::invalid_argument("winding: target must have k entries");
  f.alpha.resize(f.d);
  for (int p = 0; p < f.d; ++p) f.alpha[p] = values[decomp.order[p]];
  f.basis.assign(f.alpha.begin(), f.alpha.begin() + f.k);
  f.Qd.assign(f.d, std::vector<double>(f.k));
  for (int p = 0; p < f.d; ++p)
    for (int j = 0; j < f.k; ++j) f.Qd[p][j] = rational_to_double(decomp.Q[p][j]);
  for (int p = 0; p < f.d; ++p) {
    double acc = 0.0;
    for (int j = 0; j < f.k; ++j) acc += f.Qd[p][j] * f.basis[j];
    if (std::abs(acc - f.alpha[p]) > 1e-9 * std::max(1.0, std::abs(f.alpha[p])))
      throw std::invalid_argument("winding: decomposition does not reproduce the values");
  }
  f.target_img.assign(f.d, 0.0);
  for (int p = 0; p < f.d; ++p)
    for (int j = 0; j < f.k; ++j) f.target_img[p] += f.Qd[p][j] * (f.basis[j] * target[j]);
  return f;
}

double residual_at(const Frame& f, double t) {
  double worst = 0.0;
  for (int p = 0; p < f.d; ++p)
    worst = std::max(worst, dist_to_int(f.alpha[p] * t - f.target_img[p]));
  return worst;
}

// The integer lattice {u in Z^k : Q u in Z^d}, represented as residue classes
// of the box lattice diag(N_1..N_k) Z^k.
struct Lattice {
  std::vector<long long> box;                   // N_j
  std::vector<std::vector<long long>> residues; // representatives in the box
};

Lattice kernel_lattice(const QDecomposition& decomp) {
  const int d = static_cast<int>(decomp.Q.size());
  const int k = decomp.k;
  Lattice lat;
  lat.box.assign(k, 1);
  for (int j = 0; j < k; ++j) {
    boost::multiprecision::cpp_int l = 1;
    for (int p = 0; p < d; ++p)
      l = boost::multiprecision::lcm(l, denominator(decomp.Q[p][j]));
    if (l > 1000000)
      throw std::invalid_argument("winding: rational denominators too large");
    lat.box[j] = static_cast<long long>(l);
  }
  double cells = 1.0;
  for (long long n : lat.box) cells *= static_cast<double>(n);
  if (cells > 100000.0) throw std::invalid_argument("winding: kernel lattice too fine");

  std::vector<long long> u(k, 0);
  for (;;) {
    bool integral = true;
    for (int p = k; p < d && integral; ++p) {
      Rational acc = 0;
      for (int j = 0; j < k; ++j) acc += decomp.Q[p][j] * u[j];
      if (denominator(acc) != 1) integral = false;
    }
    if (integral) lat.residues.push_back(u);
    int j = 0;
    while (j < k && u[j] == lat.box[j] - 1) u[j++] = 0;
    if (j == k) break;
    ++u[j];
  }
  return lat;
}

// Nearest lattice point to w, sup metric.
std::vector<double> nearest_lattice_point(const Lattice& lat, const std::vector<double>& w) {
  const int k = static_cast<int>(w.size());
  std::vector<double> best(k, 0.0);
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& res : lat.residues) {
    std::vector<double> cand(k);
    double dist = 0.0;
    for (int j = 0; j < k; ++j) {
      double n = static_cast<double>(lat.box[j]);
      cand[j] = res[j] + n * std::round((w[j] - res[j]) / n);
      dist = std::max(dist, std::abs(w[j] - cand[j]));
    }
    if (dist < best_d) {
      best_d = dist;
      best = std::move(cand);
    }
  }
  return best;
}

WindingWitness build_witness(const Frame& f, const Lattice& lat,
                             const std::vector<double>& target, double t) {
  std::vector<double> w(f.k);
  for (int j = 0; j < f.k; ++j) w[j] = f.basis[j] * t - f.basis[j] * target[j];
  std::vector<double> kappa = nearest_lattice_point(lat, w);
  WindingWitness out;
  out.t = t;
  out.target = target;
  out.r.resize(f.k);
  for (int j = 0; j < f.k; ++j) out.r[j] = (f.basis[j] * t - kappa[j]) / f.basis[j];
  out.residual = residual_at(f, t);
  return out;
}

// Continued-fraction convergent denominators of x, increasing.
std::vector<double> convergent_denominators(double x, double q_limit) {
  std::vector<double> out;
  double y = std::abs(x);
  double p0 = 1, q0 = 0, p1 = std::floor(y), q1 = 1;
  y -= std::floor(y);
  out.push_back(q1);
  for (int i = 0; i < 80 && y != 0.0; ++i) {
    y = 1.0 / y;
    double a = std::floor(y);
    y -= a;
    double p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > q_limit || !std::isfinite(q2)) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    out.push_back(q1);
  }
  return out;
}

}  // namespace

double winding_residual(const std::vector<double>& values, const QDecomposition& decomp,
                        const std::vector<double>& target, double t) {
  return residual_at(make_frame(values, decomp, target), t);
}

std::optional<WindingWitness> winding_search(const std::vector<double>& values,
                                             const QDecomposition& decomp,
                                             const std::vector<double>& target,
                                             double min_abs_t, double tol,
                                             const WindingBudget& budget) {
  if (tol < 0.0) throw std::invalid_argument("winding_search: tol must be nonnegative");
  Frame f = make_frame(values, decomp, target);
  Lattice lat = kernel_lattice(decomp);

  if (f.k == 1) {
    // The orbit covers the whole 1-torus; every target is hit exactly with
    // period N / |a_1|.
    const double period = static_cast<double>(lat.box[0]) / std::abs(f.basis[0]);
    double m = std::floor((min_abs_t - target[0]) / period) + 1.0;
    double t = target[0] + m * period;
    while (std::abs(t) <= min_abs_t) t += period;
    auto w = build_witness(f, lat, target, t);
    if (w.residual <= tol) return w;
    return std::nullopt;
  }

  // Exact hits exist only in the k = 1 case: for k >= 2 a simultaneous
  // integer hit would force a rational ratio among the basis values. (The
  // convergent scan would otherwise "find" the rational double itself.)
  if (tol == 0.0) return std::nullopt;

  std::uint64_t evals = 0;
  const bool homogeneous =
      std::all_of(target.begin(), target.end(), [](double s) { return s == 0.0; });
  if (f.k == 2 && homogeneous) {
    const double ratio = f.basis[1] / f.basis[0];
    for (double q : convergent_denominators(ratio, 1e15)) {
      if (evals++ > budget.max_evals) return std::nullopt;
      double t = q / std::abs(f.basis[0]);
      if (std::abs(t) <= min_abs_t) continue;
      if (residual_at(f, t) <= tol) return build_witness(f, lat, target, t);
    }
  }

  double max_alpha = 0.0;
  for (double a : f.alpha) max_alpha = std::max(max_alpha, std::abs(a));
  const double step = tol / (2.0 * max_alpha);
  for (std::uint64_t i = 1; evals < budget.max_evals; ++i) {
    double t = min_abs_t + static_cast<double>(i) * step;
    for (double signed_t : {t, -t}) {
      ++evals;
      if (residual_at(f, signed_t) <= tol) return build_witness(f, lat, target, signed_t);
    }
  }
  return std::nullopt;
}

double choose_A(const std::vector<std::pair<double, double>>& first_layer,
                const TanhSeries& series, double lo, double hi, double margin) {
  if (!(margin > 0.0)) throw std::invalid_argument("choose_A: margin must be positive");
  if (!(hi > lo)) throw std::invalid_argument("choose_A: empty interval");
  std::vector<double> exclusion;
  for (const auto& [omega, theta] : first_layer) {
    if (omega == 0.0) throw std::invalid_argument("choose_A: zero first-layer weight");
    for (const auto& term : series.terms) {
      double x = (term.shift - theta) / omega;
      if (x >= lo - margin && x <= hi + margin) exclusion.push_back(x);
    }
  }
  std::sort(exclusion.begin(), exclusion.end());

  std::vector<double> candidates = {lo};
  std::vector<double> inside;
  for (double x : exclusion)
    if (x >= lo && x <= hi) inside.push_back(x);
  std::vector<double> bounds = {lo};
  bounds.insert(bounds.end(), inside.begin(), inside.end());
  bounds.push_back(hi);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    candidates.push_back(0.5 * (bounds[i] + bounds[i + 1]));
  candidates.push_back(hi);
  std::sort(candidates.begin(), candidates.end());

  for (double a : candidates) {
    double nearest = std::numeric_limits<double>::infinity();
    for (double x : exclusion) nearest = std::min(nearest, std::abs(a - x));
    if (nearest >= margin) return a;
  }
  throw std::runtime_error("choose_A: no admissible point at this margin; reduce the margin");
}

}  // namespace gfnn
