#pragma once
// Exact rational coordinates of real values over a declared basis of named
// constants. The basis is declared rationally independent by the user (a
// small exhaustive relation search screens obvious mistakes); dimensions and
// decompositions over Q are then exact rational arithmetic, never floating
// point.

#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gfnn {

using Rational = boost::multiprecision::cpp_rational;

double rational_to_double(const Rational& r);
// Accepts "p", "p/q", and decimal literals like "-1.4" (exact p / 10^k).
Rational rational_from_string(const std::string& text);
std::string rational_to_string(const Rational& r);

struct SymbolicBasis {
  std::vector<std::string> names;
  std::vector<double> values;

  int index_of(const std::string& name) const;  // -1 when absent
};

// Screens the declared values for integer relations up to the given height;
// throws when one is found.
std::shared_ptr<const SymbolicBasis> make_basis(std::vector<std::string> names,
                                                std::vector<double> values,
                                                int relation_height = 8);

struct SymbolicReal {
  std::shared_ptr<const SymbolicBasis> basis;
  std::vector<Rational> coeffs;  // one per basis constant

  double numeric() const;
  bool is_zero() const;  // exact: all coefficients zero
};

SymbolicReal symbolic_constant(std::shared_ptr<const SymbolicBasis> basis, const Rational& q,
                               const std::string& unit_name);

// Parses sums of terms "q", "q*name", "name" over the given basis,
// e.g. "1/2+sqrt2" or "-4/5". Plain rationals use the basis constant "one"
// (which must then be declared with value 1).
SymbolicReal parse_symbolic(const std::string& text,
                            std::shared_ptr<const SymbolicBasis> basis);

// Rank over Q of the coefficient vectors; exact. Values must be nonzero
// (exactly) and share one basis.
int q_dimension(const std::vector<SymbolicReal>& values);

struct QDecomposition {
  int k = 0;
  std::vector<int> order;  // permutation of indices, chosen basis first
  // Q[p][j]: coordinates of values[order[p]] in the chosen basis values;
  // the first k rows form the k x k identity matrix.
  std::vector<std::vector<Rational>> Q;
};

// Greedy selection of the first Q-independent subsequence (stable order),
// then exact coordinates for every value.
QDecomposition q_decompose(const std::vector<SymbolicReal>& values);

}  // namespace gfnn
