#include "gfnn/tanh_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gfnn {

std::vector<std::string> validate_series(const TanhSeries& s) {
  std::vector<std::string> bad;
  if (!(s.alpha > 0.0)) bad.push_back("alpha must be strictly positive");
  if (s.tail_bound < 0.0) bad.push_back("tail_bound must be nonnegative");
  double l1 = 0.0;
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    if (s.terms[i].coeff == 0.0)
      bad.push_back("coefficient at shift index " + std::to_string(i) + " is zero");
    if (i > 0 && !(s.terms[i].shift > s.terms[i - 1].shift))
      bad.push_back("shifts are not strictly increasing at index " + std::to_string(i));
    l1 += std::abs(s.terms[i].coeff);
  }
  if (!std::isfinite(l1 + s.tail_bound)) bad.push_back("coefficient mass is not finite");
  return bad;
}

double imaginary_period(const TanhSeries& s) { return M_PI / s.alpha; }

double sigma_eval(const TanhSeries& s, double x) {
  double acc = s.offset;
  for (const auto& t : s.terms) acc += t.coeff * std::tanh(s.alpha * (x - t.shift));
  return acc;
}

double nearest_pole_distance(const TanhSeries& s, std::complex<double> z,
                             std::complex<double>* which) {
  if (s.terms.empty()) return std::numeric_limits<double>::infinity();
  const double period = imaginary_period(s);
  // Imaginary parts of poles form the grid (n + 1/2) * period; shifts are
  // sorted, so only the bracketing shifts matter for the real part.
  double n = std::round(z.imag() / period - 0.5);
  double best = std::numeric_limits<double>::infinity();
  std::complex<double> best_pole;
  for (double m : {n - 1.0, n, n + 1.0}) {
    double im = (m + 0.5) * period;
    auto lo = std::lower_bound(s.terms.begin(), s.terms.end(), z.real(),
                               [](const TanhTerm& t, double v) { return t.shift < v; });
    for (auto it : {lo == s.terms.begin() ? lo : std::prev(lo), lo}) {
      if (it == s.terms.end()) continue;
      std::complex<double> pole(it->shift, im);
      double d = std::abs(z - pole);
      if (d < best) {
        best = d;
        best_pole = pole;
      }
    }
  }
  if (which) *which = best_pole;
  return best;
}

std::variant<std::complex<double>, PoleProximity> sigma_eval_complex(
    const TanhSeries& s, std::complex<double> z, double pole_tol) {
  std::complex<double> pole;
  double d = nearest_pole_distance(s, z, &pole);
  if (d < pole_tol) return PoleProximity{pole, d};
  std::complex<double> acc(s.offset, 0.0);
  for (const auto& t : s.terms) acc += t.coeff * std::tanh(s.alpha * (z - t.shift));
  return acc;
}

std::vector<std::complex<double>> poles(const TanhSeries& s, const ComplexRect& window) {
  std::vector<std::complex<double>> out;
  const double period = imaginary_period(s);
  long long n_lo = static_cast<long long>(std::ceil(window.im_lo / period - 0.5));
  long long n_hi = static_cast<long long>(std::floor(window.im_hi / period - 0.5));
  for (const auto& t : s.terms) {
    if (t.shift < window.re_lo || t.shift > window.re_hi) continue;
    for (long long n = n_lo; n <= n_hi; ++n)
      out.emplace_back(t.shift, (static_cast<double>(n) + 0.5) * period);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace gfnn
