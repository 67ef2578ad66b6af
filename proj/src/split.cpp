#include "gfnn/split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gfnn/self_avoiding.hpp"

namespace gfnn {

std::vector<std::pair<NodeId, double>> first_layer_weights(const Network& net) {
  if (net.inputs.size() != 1)
    throw std::invalid_argument("first_layer_weights: network must have a single input");
  const NodeId& in = net.inputs.front();
  std::vector<std::pair<NodeId, double>> out;
  for (const auto& [key, w] : net.edges)
    if (key.first == in) out.emplace_back(key.second, w);
  std::sort(out.begin(), out.end());
  return out;
}

Network split_input(const Network& net, const QDecomposition& decomp,
                    const TanhSeries& series) {
  auto bad = validate_series(series);
  if (!bad.empty()) throw std::invalid_argument("split_input: " + bad.front());
  if (decomp.k < 2)
    throw std::invalid_argument(
        "split_input: rational dimension is 1; splitting needs k >= 2");
  if (!is_non_degenerate(net)) throw std::invalid_argument("split_input: degenerate network");
  if (!find_clone_pairs(net).empty())
    throw std::invalid_argument("split_input: network has clone pairs");
  if (!is_layered(net)) throw std::invalid_argument("split_input: network is not layered");

  auto first = first_layer_weights(net);
  const int d = static_cast<int>(first.size());
  if (static_cast<int>(decomp.Q.size()) != d)
    throw std::invalid_argument("split_input: decomposition size does not match the first layer");
  for (int p = 0; p < d; ++p) {
    double acc = 0.0;
    for (int j = 0; j < decomp.k; ++j)
      acc += rational_to_double(decomp.Q[p][j]) * first[decomp.order[j]].second;
    double expect = first[decomp.order[p]].second;
    if (std::abs(acc - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
      throw std::invalid_argument(
          "split_input: decomposition does not reproduce the first-layer weights "
          "(values must follow the sorted node order)");
  }

  const NodeId& old_in = net.inputs.front();
  std::string prefix = "u";
  auto taken = [&](const std::string& p) {
    for (int j = 1; j <= decomp.k; ++j)
      if (net.has_node(p + std::to_string(j))) return true;
    return false;
  };
  while (taken(prefix)) prefix = "_" + prefix;

  Network out;
  for (int j = 1; j <= decomp.k; ++j) out.inputs.push_back(prefix + std::to_string(j));
  out.outputs = net.outputs;
  out.biases = net.biases;
  for (const auto& [key, w] : net.edges)
    if (key.first != old_in) out.edges[key] = w;

  // Basis weights are the first k entries of the reordered first layer.
  for (int p = 0; p < d; ++p) {
    const NodeId& node = first[decomp.order[p]].first;
    for (int j = 0; j < decomp.k; ++j) {
      if (decomp.Q[p][j] == 0) continue;
      double w = rational_to_double(decomp.Q[p][j]) * first[decomp.order[j]].second;
      out.edges[{out.inputs[j], node}] = w;
    }
  }
  return out;
}

CriticalLineProfile critical_line_profile(double a,
                                          const std::vector<std::pair<long long, double>>& entries,
                                          const TanhSeries& series, double t_lo, double t_hi,
                                          double separation_tol) {
  if (entries.empty())
    throw std::invalid_argument("critical_line_profile: no first-layer entries");
  if (a == 0.0) throw std::invalid_argument("critical_line_profile: a must be nonzero");
  if (std::abs(imaginary_period(series) - 1.0) > 1e-12)
    throw std::invalid_argument("critical_line_profile: series must have alpha = pi");
  for (const auto& [n, theta] : entries)
    if (n == 0) throw std::invalid_argument("critical_line_profile: zero multiplier");

  // Divide the common power of two out of the multipliers, folding it into a.
  long long common = 63;
  for (const auto& [n, theta] : entries) {
    long long v = 0, m = std::llabs(n);
    while (m % 2 == 0) {
      m /= 2;
      ++v;
    }
    common = std::min(common, v);
  }

  CriticalLineProfile out;
  out.a = a * static_cast<double>(1LL << common);
  std::vector<ScaledCopy> odd_copies;
  std::vector<std::size_t> odd_index;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CriticalLineEntry e;
    e.index = i;
    e.multiplier = entries[i].first / (1LL << common);
    e.theta = entries[i].second;
    e.coth_like = (e.multiplier % 2 != 0);
    if (e.coth_like) {
      for (const auto& term : series.terms) {
        double t = (term.shift - e.theta) / (e.multiplier * out.a);
        if (t >= t_lo && t <= t_hi) e.pole_positions.push_back(t);
      }
      std::sort(e.pole_positions.begin(), e.pole_positions.end());
      odd_copies.push_back({e.multiplier, e.theta});
      odd_index.push_back(i);
    }
    out.entries.push_back(std::move(e));
  }
  if (odd_copies.empty())
    throw std::invalid_argument(
        "critical_line_profile: all multipliers even after normalization");

  // The witness search runs in y = a t coordinates, where the copies are
  // (shifts - theta) / N; the pole position in t is y / a.
  std::vector<double> shifts;
  shifts.reserve(series.terms.size());
  for (const auto& term : series.terms) shifts.push_back(term.shift);
  double y_lo = t_lo * out.a, y_hi = t_hi * out.a;
  if (y_lo > y_hi) std::swap(y_lo, y_hi);
  auto witness = self_avoiding_witness(odd_copies, shifts, y_lo, y_hi, separation_tol);
  if (witness) out.isolated_pole = {odd_index[witness->index], witness->t / out.a};
  return out;
}

}  // namespace gfnn
