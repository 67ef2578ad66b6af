#include "gfnn/self_avoiding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gfnn {

int default_shift_bijection(int k) {
  if (k == 0) return 1;
  return k > 0 ? 2 * k : 1 - 2 * k;
}

std::vector<double> generate_self_avoiding(const SelfAvoidingSpec& spec) {
  if (!(spec.beta > 0.0 && spec.beta < 1.0))
    throw std::invalid_argument("generate_self_avoiding: beta must lie in (0, 1)");
  if (spec.k_max < spec.k_min)
    throw std::invalid_argument("generate_self_avoiding: empty index range");
  auto b = spec.bijection ? spec.bijection : default_shift_bijection;
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(spec.k_max - spec.k_min + 1));
  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    int e = b(k);
    if (e < 1)
      throw std::invalid_argument("generate_self_avoiding: bijection must map into {1,2,...}");
    s.push_back(spec.beta * (k + std::pow(M_PI, -e)));
  }
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1]))
      throw std::invalid_argument(
          "generate_self_avoiding: chosen bijection breaks monotonicity");
  return s;
}

double mesh(const std::vector<double>& shifts) {
  double m = 0.0;
  for (std::size_t i = 1; i < shifts.size(); ++i)
    m = std::max(m, shifts[i] - shifts[i - 1]);
  return m;
}

namespace {

// Distance from t to the nearest point of (shifts - theta) / omega.
double copy_distance(const std::vector<double>& shifts, const ScaledCopy& c, double t) {
  const double target = c.omega * t + c.theta;
  auto it = std::lower_bound(shifts.begin(), shifts.end(), target);
  double best = std::numeric_limits<double>::infinity();
  if (it != shifts.end()) best = std::min(best, std::abs(*it - target));
  if (it != shifts.begin()) best = std::min(best, std::abs(*std::prev(it) - target));
  return best / std::abs(static_cast<double>(c.omega));
}

}  // namespace

std::optional<SelfAvoidingWitness> self_avoiding_witness(
    const std::vector<ScaledCopy>& pairs, const std::vector<double>& shifts,
    double window_lo, double window_hi, double tol) {
  if (pairs.empty()) throw std::invalid_argument("self_avoiding_witness: no copies given");
  std::set<std::pair<long long, double>> distinct;
  for (const auto& c : pairs) {
    if (c.omega % 2 == 0)
      throw std::invalid_argument("self_avoiding_witness: omega must be odd");
    if (!distinct.insert({c.omega, c.theta}).second)
      throw std::invalid_argument("self_avoiding_witness: pairs must be pairwise distinct");
  }
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    for (double s : shifts) {
      double t = (s - pairs[j].theta) / pairs[j].omega;
      if (t < window_lo || t > window_hi) continue;
      bool isolated = true;
      for (std::size_t o = 0; o < pairs.size() && isolated; ++o)
        if (o != j && copy_distance(shifts, pairs[o], t) <= tol) isolated = false;
      if (isolated) return SelfAvoidingWitness{j, t};
    }
  }
  return std::nullopt;
}

std::optional<RationalRelation> refute_rational_relation(const std::vector<double>& gaps,
                                                         int height) {
  if (gaps.empty()) throw std::invalid_argument("refute_rational_relation: no gaps");
  if (height < 1) throw std::invalid_argument("refute_rational_relation: height must be >= 1");
  for (double g : gaps)
    if (g == 0.0 || !std::isfinite(g))
      throw std::invalid_argument("refute_rational_relation: gaps must be finite and nonzero");
  const std::size_t n = gaps.size();
  double combos = std::pow(2.0 * height + 1.0, static_cast<double>(n));
  if (combos > 2e7)
    throw std::invalid_argument("refute_rational_relation: search space too large");

  std::vector<long long> m(n, -height);
  std::optional<RationalRelation> best;
  long long best_height = 0;
  auto consider = [&](const std::vector<long long>& cand) {
    double acc = 0.0, scale = 0.0;
    long long h = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += cand[i] * gaps[i];
      scale += std::abs(cand[i] * gaps[i]);
      h = std::max(h, std::llabs(cand[i]));
    }
    if (h == 0 || std::abs(acc) > 1e-12 * scale) return;
    std::vector<long long> norm = cand;
    for (auto& c : norm)
      if (c != 0) {
        if (c < 0)
          for (auto& x : norm) x = -x;
        break;
      }
    if (!best || h < best_height || (h == best_height && norm < best->coeffs)) {
      best = RationalRelation{norm};
      best_height = h;
    }
  };
  while (true) {
    consider(m);
    std::size_t i = 0;
    while (i < n && m[i] == height) m[i++] = -height;
    if (i == n) break;
    ++m[i];
  }
  return best;
}

}  // namespace gfnn
