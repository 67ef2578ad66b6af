#pragma once
// Shared fixtures and helpers for the test suites.

#include <random>
#include <vector>

#include "gfnn/eval.hpp"
#include "gfnn/network.hpp"
#include "gfnn/nonlinearity.hpp"
#include "gfnn/self_avoiding.hpp"
#include "gfnn/tanh_series.hpp"

namespace gfnn::testing {

// x -> a -> b chain with an extra input y feeding b; outputs {b}.
inline Network small_chain() {
  Network n;
  n.inputs = {"x", "y"};
  n.outputs = {"b"};
  n.biases = {{"a", 0.25}, {"b", -0.5}};
  n.edges = {{{"x", "a"}, 1.5}, {{"a", "b"}, 0.75}, {{"y", "b"}, -1.25}};
  return n;
}

// Diamond over one input with two parallel outputs.
//   x -> l -> o1, x -> r -> o2, plus a shared mid node feeding both.
inline Network diamond() {
  Network n;
  n.inputs = {"x"};
  n.outputs = {"o1", "o2"};
  n.biases = {{"l", 0.1}, {"r", -0.2}, {"o1", 0.3}, {"o2", 0.4}};
  n.edges = {{{"x", "l"}, 1.0},
             {{"x", "r"}, 2.0},
             {{"l", "o1"}, 0.5},
             {{"r", "o2"}, -0.5}};
  return n;
}

// An output node that keeps outgoing edges (it is not a final node), plus an
// edge skipping a level, so the network is not layered.
inline Network skip_level_with_middle_output() {
  Network n;
  n.inputs = {"u1", "u2"};
  n.outputs = {"w_mid", "w_top"};
  n.biases = {{"v", 0.5}, {"w_mid", -0.25}, {"w_top", 1.0}};
  n.edges = {{{"u1", "v"}, 1.0},
             {{"u2", "v"}, -2.0},
             {{"v", "w_mid"}, 0.5},
             {{"u2", "w_mid"}, 0.75},   // level 0 -> level 2: not layered
             {{"w_mid", "w_top"}, 1.5}};
  return n;
}

// A 21-term series with alpha = pi over a self-avoiding shift set.
inline TanhSeries self_avoiding_series() {
  TanhSeries s;
  s.alpha = M_PI;
  s.offset = 0.25;
  SelfAvoidingSpec spec;
  spec.beta = 0.5;
  spec.k_min = -10;
  spec.k_max = 10;
  int k = spec.k_min;
  for (double shift : generate_self_avoiding(spec)) {
    double c = 1.0 / (1.0 + k * k) + 0.05;
    s.terms.push_back({shift, c});
    ++k;
  }
  return s;
}

inline std::vector<std::vector<double>> random_points(int dims, int count, std::uint64_t seed,
                                                      double lo = -2.0, double hi = 2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dims));
  for (auto& p : pts)
    for (auto& x : p) x = uni(rng);
  return pts;
}

// Max abs difference of the two networks' output tuples over sample points.
inline double max_output_diff(const Network& a, const Network& b, const Nonlinearity& rho,
                              const std::vector<std::vector<double>>& pts) {
  double worst = 0.0;
  for (const auto& p : pts) {
    auto ya = eval_output_vector(a, rho, p);
    auto yb = eval_output_vector(b, rho, p);
    for (std::size_t i = 0; i < ya.size(); ++i)
      worst = std::max(worst, std::abs(ya[i] - yb[i]));
  }
  return worst;
}

}  // namespace gfnn::testing
