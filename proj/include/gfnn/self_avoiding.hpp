#pragma once
// Shift sets s_k = beta * (k + pi^(-b(k))) over an index range, where b is a
// bijection Z -> N. Consecutive gaps of such a set are rationally independent
// (pi is transcendental), which makes the set self-avoiding: any finite family
// of odd-integer-scaled translated copies contains a point lying in exactly
// one copy. Also: witness search over such copies, and exhaustive refutation
// of small integer relations between gap values.

#include <functional>
#include <optional>
#include <vector>

namespace gfnn {

struct SelfAvoidingSpec {
  double beta = 0.5;  // in (0, 1)
  int k_min = 0;
  int k_max = 0;
  std::function<int(int)> bijection;  // Z -> {1, 2, ...}; default used when empty
};

// Default bijection: 0 -> 1, k -> 2k for k > 0, k -> 1 - 2k for k < 0.
// The exponents decay fast enough that s_k stays strictly increasing for
// every beta in (0, 1).
int default_shift_bijection(int k);

// Exact s_k values, strictly increasing; throws if the supplied bijection
// breaks monotonicity or the range is empty.
std::vector<double> generate_self_avoiding(const SelfAvoidingSpec& spec);

double mesh(const std::vector<double>& shifts);  // max consecutive gap

struct ScaledCopy {
  long long omega = 1;  // odd
  double theta = 0.0;

  friend bool operator==(const ScaledCopy&, const ScaledCopy&) = default;
};

struct SelfAvoidingWitness {
  std::size_t index = 0;  // which copy contains t
  double t = 0.0;
};

// Searches the window for a point of copy_j = (shifts - theta_j) / omega_j
// whose distance to every other copy exceeds tol. Pairs must be pairwise
// distinct with odd omega.
std::optional<SelfAvoidingWitness> self_avoiding_witness(
    const std::vector<ScaledCopy>& pairs, const std::vector<double>& shifts,
    double window_lo, double window_hi, double tol);

struct RationalRelation {
  std::vector<long long> coeffs;  // sum coeffs[i] * gaps[i] == 0 (within tolerance)
};

// Exhaustive search for integer relations with max |m_i| <= height; relations
// are accepted within 1e-12 * scale. Returns nullopt when no relation exists
// up to that height. Gaps must be finite and nonzero.
std::optional<RationalRelation> refute_rational_relation(const std::vector<double>& gaps,
                                                         int height);

}  // namespace gfnn
