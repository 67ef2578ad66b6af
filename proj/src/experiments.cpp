#include "gfnn/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "gfnn/isomorphism.hpp"
#include "gfnn/network_io.hpp"
#include "gfnn/random_network.hpp"

namespace gfnn {

LiTestReport li_test(const std::vector<Network>& networks, const Nonlinearity& sigma,
                     int samples, std::uint64_t seed, double threshold) {
  if (networks.empty()) throw std::invalid_argument("li_test: no networks");
  const auto& inputs = networks.front().inputs;
  for (const auto& n : networks) {
    if (n.outputs.size() != 1)
      throw std::invalid_argument("li_test: networks must have a single output");
    if (n.inputs != inputs)
      throw std::invalid_argument("li_test: networks must share one input list");
  }
  const int n = static_cast<int>(networks.size());
  if (samples <= n + 1)
    throw std::invalid_argument("li_test: need more samples than networks plus one");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  Eigen::MatrixXd A(samples, n + 1);
  std::vector<double> point(inputs.size());
  for (int i = 0; i < samples; ++i) {
    for (auto& x : point) x = uni(rng);
    A(i, 0) = 1.0;
    for (int j = 0; j < n; ++j) A(i, j + 1) = eval_output_vector(networks[j], sigma, point)[0];
  }
  Eigen::VectorXd norms(n + 1);
  for (int j = 0; j <= n; ++j) {
    norms(j) = A.col(j).norm();
    if (norms(j) > 0.0) A.col(j) /= norms(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
  LiTestReport rep;
  rep.samples = samples;
  rep.threshold = threshold;
  rep.min_singular = svd.singularValues().minCoeff();
  if (rep.min_singular < threshold) {
    Eigen::VectorXd v = svd.matrixV().col(n);
    std::vector<double> lambda(n + 1);
    double norm2 = 0.0;
    for (int j = 0; j <= n; ++j) {
      lambda[j] = norms(j) > 0.0 ? v(j) / norms(j) : v(j);
      norm2 += lambda[j] * lambda[j];
    }
    for (auto& l : lambda) l /= std::sqrt(norm2);
    rep.dependency = std::move(lambda);
  }
  return rep;
}

Network append_clipped_relu_zero_block(const Network& single_output) {
  if (single_output.outputs.size() != 1)
    throw std::invalid_argument("zero block: base network must have a single output");
  const NodeId out = single_output.outputs.front();
  std::string p = "zb";
  auto taken = [&](const std::string& pre) {
    for (const char* suffix : {"1", "2", "3", "_out"})
      if (single_output.has_node(pre + suffix)) return true;
    return false;
  };
  while (taken(p)) p = "_" + p;

  Network n0 = single_output;
  const NodeId a1 = p + "1", a2 = p + "2", a3 = p + "3", z = p + "_out";
  n0.biases[a1] = 0.0;
  n0.biases[a2] = 0.0;
  n0.biases[a3] = -1.0;
  n0.biases[z] = 0.0;
  n0.edges[{out, a1}] = 1.0;
  n0.edges[{out, a2}] = 2.0;
  n0.edges[{out, a3}] = 2.0;
  n0.edges[{a1, z}] = 1.0;
  n0.edges[{a2, z}] = -0.5;
  n0.edges[{a3, z}] = -0.5;
  n0.outputs = {z};
  return n0;
}

std::string to_string(TrialArm arm) {
  switch (arm) {
    case TrialArm::permuted_copy: return "permuted-copy";
    case TrialArm::fresh_pair: return "fresh-pair";
    case TrialArm::clipped_relu_zero: return "clipped-relu-zero";
  }
  return "?";
}

std::string ExperimentReport::canonical_text() const {
  std::ostringstream os;
  os << "arm=" << to_string(arm) << " trials=" << trials << " seed=" << seed << "\n";
  for (const auto& r : records)
    os << r.index << "," << to_string(r.arm) << "," << (r.maps_equal ? 1 : 0) << ","
       << (r.faithful_iso ? 1 : 0) << "," << format_double(r.max_diff) << ","
       << (r.contradiction ? 1 : 0) << "," << (r.counterexample ? 1 : 0) << "\n";
  os << "equal=" << equal_count << " iso=" << iso_count
     << " contradictions=" << contradiction_count
     << " counterexamples=" << counterexample_count
     << " max_equal_residual=" << format_double(max_equal_residual) << "\n";
  return os.str();
}

namespace {

std::uint64_t trial_seed(std::uint64_t master, int trial, int lane) {
  std::uint64_t x = master + 0x9e3779b97f4a7c15ull * (2 * trial + lane + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  return x;
}

std::string serialize_pair(const Network& a, const Network& b) {
  NetworkFile file;
  file.networks["first"] = NetworkEntry{a, {}};
  file.networks["second"] = NetworkEntry{b, {}};
  return emit_network_file(file);
}

}  // namespace

ExperimentReport identifiability_experiment(const IdentifiabilityConfig& config,
                                            const Nonlinearity& sigma, TrialArm arm,
                                            int trials, std::uint64_t seed) {
  if (trials <= 0) throw std::invalid_argument("experiment: trials must be positive");
  if (config.layouts.empty()) throw std::invalid_argument("experiment: no layouts");
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.arm = arm;
  const Nonlinearity clipped = Nonlinearity::builtin(BuiltinKind::clipped_relu);

  for (int i = 0; i < trials; ++i) {
    const auto& layout = config.layouts[i % config.layouts.size()];
    Network n1, n2;
    const Nonlinearity* rho = &sigma;
    switch (arm) {
      case TrialArm::permuted_copy:
        n1 = random_clonesfree_network(trial_seed(seed, i, 0), layout);
        n2 = permute_hidden_labels(n1, trial_seed(seed, i, 1));
        break;
      case TrialArm::fresh_pair:
        n1 = random_clonesfree_network(trial_seed(seed, i, 0), layout);
        n2 = random_clonesfree_network(trial_seed(seed, i, 1), layout);
        break;
      case TrialArm::clipped_relu_zero: {
        std::vector<int> single = layout;
        single.back() = 1;
        std::vector<int> deeper = single;
        deeper.insert(deeper.end() - 1, 2);
        Network b1 = random_clonesfree_network(trial_seed(seed, i, 0), single);
        Network b2 = random_clonesfree_network(trial_seed(seed, i, 1), deeper);
        n1 = append_clipped_relu_zero_block(b1);
        n2 = append_clipped_relu_zero_block(b2);
        rho = &clipped;
        break;
      }
    }
    if (!validate(n1).empty() || !validate(n2).empty())
      throw std::runtime_error("experiment: generator produced an invalid network");

    TrialRecord r;
    r.index = i;
    r.arm = arm;
    auto me = maps_equal(n1, n2, *rho, config.grid, config.eq_tol);
    r.maps_equal = me.equal;
    r.max_diff = me.max_diff;
    r.faithful_iso = faithfully_isomorphic(n1, n2).has_value();
    r.counterexample = r.maps_equal && !r.faithful_iso;
    // Isomorphic networks realize equal maps; under the self-avoiding series
    // the converse is expected as well. The control arm exists to produce
    // equal-but-nonisomorphic pairs, so only a broken expectation counts.
    if (arm == TrialArm::clipped_relu_zero)
      r.contradiction = !r.maps_equal || r.faithful_iso;
    else
      r.contradiction = r.maps_equal != r.faithful_iso;
    if (r.contradiction) r.fixture = serialize_pair(n1, n2);

    if (r.maps_equal) {
      ++rep.equal_count;
      rep.max_equal_residual = std::max(rep.max_equal_residual, r.max_diff);
    }
    if (r.faithful_iso) ++rep.iso_count;
    if (r.contradiction) ++rep.contradiction_count;
    if (r.counterexample) ++rep.counterexample_count;
    rep.records.push_back(std::move(r));
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace gfnn
