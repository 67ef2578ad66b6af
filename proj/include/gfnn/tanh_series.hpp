#pragma once
// Finite tanh superpositions sigma(x) = C + sum_s c_s * tanh(alpha*(x - s))
// over a strictly increasing shift set with nonzero coefficients. The complex
// extension is meromorphic with poles at s + (n + 1/2) * (pi/alpha) * i, and
// is periodic in the imaginary direction with period pi/alpha (period 1 when
// alpha = pi).

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace gfnn {

struct TanhTerm {
  double shift = 0.0;
  double coeff = 0.0;

  friend bool operator==(const TanhTerm&, const TanhTerm&) = default;
};

struct TanhSeries {
  double offset = 0.0;  // C
  double alpha = 1.0;   // > 0
  std::vector<TanhTerm> terms;  // strictly increasing shifts, nonzero coeffs
  double tail_bound = 0.0;      // l1 mass of terms dropped by truncation

  friend bool operator==(const TanhSeries&, const TanhSeries&) = default;
};

std::vector<std::string> validate_series(const TanhSeries& s);

double imaginary_period(const TanhSeries& s);  // pi / alpha

double sigma_eval(const TanhSeries& s, double x);

struct PoleProximity {
  std::complex<double> pole;
  double distance = 0.0;
};

// Complex evaluation; reports PoleProximity instead of a value when z is
// within pole_tol of a pole of the truncated series.
std::variant<std::complex<double>, PoleProximity> sigma_eval_complex(
    const TanhSeries& s, std::complex<double> z, double pole_tol);

// Distance from z to the nearest pole of the truncated series; the pole
// itself is written through `which` when non-null. Infinity for an empty
// term list.
double nearest_pole_distance(const TanhSeries& s, std::complex<double> z,
                             std::complex<double>* which = nullptr);

struct ComplexRect {
  double re_lo, re_hi, im_lo, im_hi;
};

// All poles inside the closed window, sorted by (re, im).
std::vector<std::complex<double>> poles(const TanhSeries& s, const ComplexRect& window);

}  // namespace gfnn
