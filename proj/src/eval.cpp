#include "gfnn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gfnn {

namespace {

void check_assignment_keys(const Network& net, const auto& x) {
  if (x.size() != net.inputs.size())
    throw std::invalid_argument("eval: assignment size does not match the input list");
  for (const auto& v : net.inputs)
    if (!x.count(v)) throw std::invalid_argument("eval: assignment is missing input '" + v + "'");
}

}  // namespace

std::map<NodeId, double> eval_all_nodes(const Network& net, const Nonlinearity& rho,
                                        const RealAssignment& x,
                                        const std::vector<NodeId>* order) {
  check_assignment_keys(net, x);
  Adjacency adj(net);
  std::vector<NodeId> canonical;
  if (!order) {
    canonical = topo_order(net);
    order = &canonical;
  }
  std::map<NodeId, double> val(x.begin(), x.end());
  for (const auto& v : *order) {
    if (val.count(v)) continue;
    auto pit = adj.parents.find(v);
    if (pit == adj.parents.end())
      throw std::invalid_argument("eval: non-input node '" + v + "' has no parents");
    double acc = 0.0;
    for (const auto& [p, w] : pit->second) {
      auto it = val.find(p);
      if (it == val.end())
        throw std::invalid_argument("eval: order visits '" + v + "' before its parents");
      acc += w * it->second;
    }
    val[v] = rho(acc + net.biases.at(v));
  }
  return val;
}

std::map<NodeId, double> eval_real(const Network& net, const Nonlinearity& rho,
                                   const RealAssignment& x) {
  auto all = eval_all_nodes(net, rho, x);
  std::map<NodeId, double> out;
  for (const auto& w : net.outputs) out[w] = all.at(w);
  return out;
}

std::vector<double> eval_output_vector(const Network& net, const Nonlinearity& rho,
                                       const std::vector<double>& x) {
  if (x.size() != net.inputs.size())
    throw std::invalid_argument("eval: point dimension does not match the input list");
  RealAssignment a;
  for (std::size_t i = 0; i < x.size(); ++i) a[net.inputs[i]] = x[i];
  auto all = eval_all_nodes(net, rho, a);
  std::vector<double> out;
  out.reserve(net.outputs.size());
  for (const auto& w : net.outputs) out.push_back(all.at(w));
  return out;
}

std::variant<std::map<NodeId, std::complex<double>>, DomainError> eval_complex_all_nodes(
    const Network& net, const Nonlinearity& sigma, const ComplexAssignment& z,
    double pole_tol) {
  if (!sigma.is_series())
    throw std::invalid_argument("eval_complex: only tanh-series nonlinearities extend to C");
  if (!(pole_tol > 0.0)) throw std::invalid_argument("eval_complex: pole_tol must be positive");
  check_assignment_keys(net, z);
  const TanhSeries& s = sigma.series_ref();
  Adjacency adj(net);
  std::map<NodeId, std::complex<double>> val(z.begin(), z.end());
  for (const auto& v : topo_order(net)) {
    if (val.count(v)) continue;
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [p, w] : adj.parents.at(v)) acc += w * val.at(p);
    acc += net.biases.at(v);
    auto r = sigma_eval_complex(s, acc, pole_tol);
    if (const auto* prox = std::get_if<PoleProximity>(&r))
      return DomainError{v, prox->pole, prox->distance};
    val[v] = std::get<std::complex<double>>(r);
  }
  return val;
}

std::variant<std::map<NodeId, std::complex<double>>, DomainError> eval_complex(
    const Network& net, const Nonlinearity& sigma, const ComplexAssignment& z,
    double pole_tol) {
  auto r = eval_complex_all_nodes(net, sigma, z, pole_tol);
  if (const auto* err = std::get_if<DomainError>(&r)) return *err;
  const auto& all = std::get<std::map<NodeId, std::complex<double>>>(r);
  std::map<NodeId, std::complex<double>> out;
  for (const auto& w : net.outputs) out[w] = all.at(w);
  return out;
}

std::vector<std::vector<double>> grid_points(int dims, const GridSpec& spec) {
  if (dims <= 0) throw std::invalid_argument("grid_points: dims must be positive");
  std::vector<std::vector<double>> pts;
  auto coord = [&](int i, int n) {
    return n == 1 ? 0.5 * (spec.lo + spec.hi)
                  : spec.lo + (spec.hi - spec.lo) * i / static_cast<double>(n - 1);
  };
  if (dims == 1) {
    pts.reserve(spec.per_dim);
    for (int i = 0; i < spec.per_dim; ++i) pts.push_back({coord(i, spec.per_dim)});
  } else if (dims == 2) {
    pts.reserve(static_cast<std::size_t>(spec.per_dim) * spec.per_dim);
    for (int i = 0; i < spec.per_dim; ++i)
      for (int j = 0; j < spec.per_dim; ++j)
        pts.push_back({coord(i, spec.per_dim), coord(j, spec.per_dim)});
  } else {
    // Latin hypercube: one stratum per sample and dimension, permuted.
    std::mt19937_64 rng(spec.lhs_seed);
    const int n = spec.lhs_cap;
    std::vector<std::vector<int>> strata(dims, std::vector<int>(n));
    for (auto& col : strata) {
      std::iota(col.begin(), col.end(), 0);
      std::shuffle(col.begin(), col.end(), rng);
    }
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    pts.assign(n, std::vector<double>(dims));
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < dims; ++d)
        pts[i][d] = spec.lo + (spec.hi - spec.lo) * (strata[d][i] + jitter(rng)) / n;
  }
  return pts;
}

MapsEqualResult maps_equal(const Network& n1, const Network& n2, const Nonlinearity& rho,
                           const GridSpec& grid, double tol) {
  if (n1.inputs != n2.inputs)
    throw std::invalid_argument("maps_equal: input lists differ");
  if (n1.outputs.size() != n2.outputs.size())
    throw std::invalid_argument("maps_equal: output counts differ");
  MapsEqualResult res;
  res.max_diff = 0.0;
  std::optional<MapsWitness> wit;
  for (const auto& p : grid_points(static_cast<int>(n1.inputs.size()), grid)) {
    auto y1 = eval_output_vector(n1, rho, p);
    auto y2 = eval_output_vector(n2, rho, p);
    for (std::size_t j = 0; j < y1.size(); ++j) {
      double d = std::abs(y1[j] - y2[j]);
      if (d > res.max_diff) {
        res.max_diff = d;
        wit = MapsWitness{p, n1.outputs[j], n2.outputs[j], d};
      }
    }
  }
  res.equal = res.max_diff <= tol;
  if (!res.equal) res.witness = wit;
  return res;
}

}  // namespace gfnn
