#pragma once
// Activation functions: a fixed family of builtin scalar nonlinearities plus
// the tanh-series family. Builtins are real-only; only series have a complex
// extension. Clipped variants use exact branch comparisons so piecewise
// identities cancel to machine zero.

#include <optional>
#include <string>
#include <variant>

#include "gfnn/tanh_series.hpp"

namespace gfnn {

enum class BuiltinKind {
  tanh,
  clipped_relu,      // min(1, max(0, x))
  logistic,          // 1 / (1 + e^-x)
  arctan,
  softsign,          // x / (1 + |x|)
  isru,              // x / sqrt(1 + a x^2), a > 0
  clipped_identity,  // clamp to [-a, a], a > 0
  soft_clip,         // (1/a) log((1 + e^(ax)) / (1 + e^(a(x-1)))), a > 0
};

std::string to_string(BuiltinKind k);
std::optional<BuiltinKind> builtin_kind_from_string(const std::string& name);
bool builtin_uses_parameter(BuiltinKind k);

double apply_builtin(BuiltinKind k, double a, double x);

struct Builtin {
  BuiltinKind kind = BuiltinKind::tanh;
  double a = 1.0;  // strictly positive where used

  friend bool operator==(const Builtin&, const Builtin&) = default;
};

struct Nonlinearity {
  std::variant<Builtin, TanhSeries> impl;

  static Nonlinearity builtin(BuiltinKind k, double a = 1.0);
  static Nonlinearity series(TanhSeries s);

  bool is_series() const { return std::holds_alternative<TanhSeries>(impl); }
  const TanhSeries& series_ref() const;  // throws when not a series
  double operator()(double x) const;

  friend bool operator==(const Nonlinearity&, const Nonlinearity&) = default;
};

// Every builtin kind with default parameter 1, handy for sweep tests.
const std::vector<Nonlinearity>& all_builtin_nonlinearities();

}  // namespace gfnn
