#include "gfnn/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "gfnn/self_avoiding.hpp"

namespace gfnn {

double rational_to_double(const Rational& r) { return static_cast<double>(r); }

Rational rational_from_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("rational: empty literal");
  // cpp_int would read a leading zero as an octal prefix.
  auto strip = [](std::string d) {
    bool neg = !d.empty() && (d[0] == '-' || d[0] == '+');
    std::string body = neg ? d.substr(1) : d;
    std::size_t i = 0;
    while (i + 1 < body.size() && body[i] == '0') ++i;
    body = body.substr(i);
    return (neg && d[0] == '-' ? "-" : "") + body;
  };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num{boost::multiprecision::cpp_int(strip(s.substr(0, slash)))};
    boost::multiprecision::cpp_int den(strip(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return num / Rational{den};
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational{boost::multiprecision::cpp_int(strip(s))};
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac_len = s.size() - dot - 1;
  Rational num{boost::multiprecision::cpp_int(strip(digits))};
  boost::multiprecision::cpp_int den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  return num / Rational{den};
}

std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

int SymbolicBasis::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

std::shared_ptr<const SymbolicBasis> make_basis(std::vector<std::string> names,
                                                std::vector<double> values,
                                                int relation_height) {
  if (names.size() != values.size() || names.empty())
    throw std::invalid_argument("basis: names and values must align and be nonempty");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw std::invalid_argument("basis: empty constant name");
    if (values[i] == 0.0 || !std::isfinite(values[i]))
      throw std::invalid_argument("basis: constant '" + names[i] + "' must be finite nonzero");
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw std::invalid_argument("basis: duplicate constant '" + names[i] + "'");
  }
  if (relation_height > 0 && values.size() >= 2) {
    auto rel = refute_rational_relation(values, relation_height);
    if (rel)
      throw std::invalid_argument(
          "basis: declared constants admit a small integer relation; not independent");
  }
  auto b = std::make_shared<SymbolicBasis>();
  b->names = std::move(names);
  b->values = std::move(values);
  return b;
}

double SymbolicReal::numeric() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    acc += rational_to_double(coeffs[i]) * basis->values[i];
  return acc;
}

bool SymbolicReal::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

SymbolicReal symbolic_constant(std::shared_ptr<const SymbolicBasis> basis, const Rational& q,
                               const std::string& unit_name) {
  int idx = basis->index_of(unit_name);
  if (idx < 0) throw std::invalid_argument("symbolic: unknown basis constant '" + unit_name + "'");
  SymbolicReal v;
  v.basis = std::move(basis);
  v.coeffs.assign(v.basis->names.size(), Rational(0));
  v.coeffs[idx] = q;
  return v;
}

SymbolicReal parse_symbolic(const std::string& text,
                            std::shared_ptr<const SymbolicBasis> basis) {
  SymbolicReal v;
  v.basis = basis;
  v.coeffs.assign(basis->names.size(), Rational(0));

  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("symbolic: empty expression");

  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw std::invalid_argument("symbolic: dangling sign in '" + text + "'");
    pos = end;

    Rational q(1);
    std::string name;
    auto star = term.find('*');
    if (star != std::string::npos) {
      q = rational_from_string(term.substr(0, star));
      name = term.substr(star + 1);
    } else if (std::isalpha(static_cast<unsigned char>(term[0])) || term[0] == '_') {
      name = term;
    } else {
      q = rational_from_string(term);
      name = "one";
    }
    int idx = basis->index_of(name);
    if (idx < 0)
      throw std::invalid_argument("symbolic: unknown basis constant '" + name + "'");
    v.coeffs[idx] += sign * q;
  }
  return v;
}

namespace {

// Row-reduction over Q with coordinate tracking: every stored row remembers
// its expression in the originally inserted rows.
class Eliminator {
 public:
  explicit Eliminator(std::size_t dims) : dims_(dims) {}

  std::size_t rank() const { return rows_.size(); }

  // Coordinates of `row` over the inserted rows, or nullopt if independent.
  std::optional<std::vector<Rational>> express(std::vector<Rational> row) const {
    std::vector<Rational> coords(rows_.size(), Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational c = row[pivot_[i]];  // by value: the loop below writes row[pivot]
      if (c == 0) continue;
      for (std::size_t d = 0; d < dims_; ++d) row[d] -= c * rows_[i][d];
      for (std::size_t j = 0; j < combo_[i].size(); ++j) coords[j] += c * combo_[i][j];
    }
    for (const auto& r : row)
      if (r != 0) return std::nullopt;
    return coords;
  }

  // Inserts an independent row (caller must have checked express() failed).
  void insert(std::vector<Rational> row) {
    std::vector<Rational> combo(rows_.size() + 1, Rational(0));
    combo.back() = 1;
    for (auto& c : combo_) c.resize(rows_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational c = row[pivot_[i]];
      if (c == 0) continue;
      for (std::size_t d = 0; d < dims_; ++d) row[d] -= c * rows_[i][d];
      for (std::size_t j = 0; j < combo_[i].size(); ++j) combo[j] -= c * combo_[i][j];
    }
    std::size_t p = 0;
    while (p < dims_ && row[p] == 0) ++p;
    if (p == dims_) throw std::logic_error("eliminator: inserting a dependent row");
    const Rational lead = row[p];
    for (auto& x : row) x /= lead;
    for (auto& x : combo) x /= lead;
    rows_.push_back(std::move(row));
    combo_.push_back(std::move(combo));
    pivot_.push_back(p);
  }

 private:
  std::size_t dims_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::vector<Rational>> combo_;
  std::vector<std::size_t> pivot_;
};

void check_symbolic_family(const std::vector<SymbolicReal>& values) {
  if (values.empty()) throw std::invalid_argument("symbolic: empty value list");
  for (const auto& v : values) {
    if (!v.basis) throw std::invalid_argument("symbolic: value without a basis");
    if (v.coeffs.size() != values.front().coeffs.size() ||
        v.basis->names != values.front().basis->names)
      throw std::invalid_argument("symbolic: values use different bases");
    if (v.is_zero()) throw std::invalid_argument("symbolic: zero value not allowed");
  }
}

}  // namespace

int q_dimension(const std::vector<SymbolicReal>& values) {
  check_symbolic_family(values);
  Eliminator elim(values.front().coeffs.size());
  for (const auto& v : values)
    if (!elim.express(v.coeffs)) elim.insert(v.coeffs);
  return static_cast<int>(elim.rank());
}

QDecomposition q_decompose(const std::vector<SymbolicReal>& values) {
  check_symbolic_family(values);
  Eliminator elim(values.front().coeffs.size());
  std::vector<int> chosen, rest;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!elim.express(values[i].coeffs)) {
      elim.insert(values[i].coeffs);
      chosen.push_back(static_cast<int>(i));
    } else {
      rest.push_back(static_cast<int>(i));
    }
  }
  QDecomposition d;
  d.k = static_cast<int>(chosen.size());
  d.order = chosen;
  d.order.insert(d.order.end(), rest.begin(), rest.end());
  for (int idx : d.order) {
    auto coords = elim.express(values[idx].coeffs);
    if (!coords) throw std::logic_error("q_decompose: inconsistent elimination");
    d.Q.push_back(std::move(*coords));
  }
  return d;
}

}  // namespace gfnn
