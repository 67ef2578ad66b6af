#include "gfnn/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

namespace gfnn {

std::string to_string(BuiltinKind k) {
  switch (k) {
    case BuiltinKind::tanh: return "tanh";
    case BuiltinKind::clipped_relu: return "clipped-relu";
    case BuiltinKind::logistic: return "logistic";
    case BuiltinKind::arctan: return "arctan";
    case BuiltinKind::softsign: return "softsign";
    case BuiltinKind::isru: return "isru";
    case BuiltinKind::clipped_identity: return "clipped-identity";
    case BuiltinKind::soft_clip: return "soft-clip";
  }
  return "?";
}

std::optional<BuiltinKind> builtin_kind_from_string(const std::string& name) {
  for (BuiltinKind k : {BuiltinKind::tanh, BuiltinKind::clipped_relu, BuiltinKind::logistic,
                        BuiltinKind::arctan, BuiltinKind::softsign, BuiltinKind::isru,
                        BuiltinKind::clipped_identity, BuiltinKind::soft_clip})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

bool builtin_uses_parameter(BuiltinKind k) {
  return k == BuiltinKind::isru || k == BuiltinKind::clipped_identity ||
         k == BuiltinKind::soft_clip;
}

namespace {

// log(1 + e^y) without overflow.
double softplus(double y) { return y > 0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)); }

}  // namespace

double apply_builtin(BuiltinKind k, double a, double x) {
  switch (k) {
    case BuiltinKind::tanh: return std::tanh(x);
    case BuiltinKind::clipped_relu:
      if (x < 0.0) return 0.0;
      if (x > 1.0) return 1.0;
      return x;
    case BuiltinKind::logistic: return 1.0 / (1.0 + std::exp(-x));
    case BuiltinKind::arctan: return std::atan(x);
    case BuiltinKind::softsign: return x / (1.0 + std::abs(x));
    case BuiltinKind::isru: return x / std::sqrt(1.0 + a * x * x);
    case BuiltinKind::clipped_identity:
      if (x > a) return a;
      if (x < -a) return -a;
      return x;
    case BuiltinKind::soft_clip: return (softplus(a * x) - softplus(a * (x - 1.0))) / a;
  }
  throw std::logic_error("apply_builtin: unknown kind");
}

Nonlinearity Nonlinearity::builtin(BuiltinKind k, double a) {
  if (builtin_uses_parameter(k) && !(a > 0.0))
    throw std::invalid_argument("nonlinearity parameter must be strictly positive");
  return Nonlinearity{Builtin{k, a}};
}

Nonlinearity Nonlinearity::series(TanhSeries s) {
  auto bad = validate_series(s);
  if (!bad.empty()) throw std::invalid_argument("nonlinearity series: " + bad.front());
  return Nonlinearity{std::move(s)};
}

const TanhSeries& Nonlinearity::series_ref() const {
  if (!is_series()) throw std::invalid_argument("nonlinearity is not a tanh series");
  return std::get<TanhSeries>(impl);
}

double Nonlinearity::operator()(double x) const {
  if (const auto* b = std::get_if<Builtin>(&impl)) return apply_builtin(b->kind, b->a, x);
  return sigma_eval(std::get<TanhSeries>(impl), x);
}

const std::vector<Nonlinearity>& all_builtin_nonlinearities() {
  static const std::vector<Nonlinearity> all = [] {
    std::vector<Nonlinearity> v;
    for (BuiltinKind k : {BuiltinKind::tanh, BuiltinKind::clipped_relu, BuiltinKind::logistic,
                          BuiltinKind::arctan, BuiltinKind::softsign, BuiltinKind::isru,
                          BuiltinKind::clipped_identity, BuiltinKind::soft_clip})
      v.push_back(Nonlinearity::builtin(k, 1.0));
    return v;
  }();
  return all;
}

}  // namespace gfnn
