#include "gfnn/random_network.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "gfnn/layered.hpp"

namespace gfnn {

Network random_clonesfree_network(std::uint64_t seed, const std::vector<int>& layout,
                                  const WeightDist& dist,
                                  const std::vector<NodeId>* input_labels) {
  if (layout.size() < 2) throw std::invalid_argument("random network: layout too short");
  for (int d : layout)
    if (d <= 0) throw std::invalid_argument("random network: layout entries must be positive");
  if (!(dist.lo_mag > 0.0 && dist.hi_mag > dist.lo_mag))
    throw std::invalid_argument("random network: bad weight distribution");

  std::vector<NodeId> labels;
  if (input_labels) {
    labels = *input_labels;
    if (static_cast<int>(labels.size()) != layout[0])
      throw std::invalid_argument("random network: input label count does not match layout");
  } else {
    for (int i = 1; i <= layout[0]; ++i) labels.push_back("x" + std::to_string(i));
  }

  for (std::uint64_t attempt = 0;; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * attempt);
    std::uniform_real_distribution<double> mag(dist.lo_mag, dist.hi_mag);
    auto draw = [&] { return (rng() & 1 ? 1.0 : -1.0) * mag(rng); };

    LayeredForm lf;
    lf.layout = layout;
    const int L = lf.depth();
    lf.weights.resize(L);
    lf.biases.resize(L);
    for (int l = 1; l <= L; ++l) {
      lf.weights[l - 1].assign(layout[l], std::vector<double>(layout[l - 1]));
      lf.biases[l - 1].resize(layout[l]);
      for (int j = 0; j < layout[l]; ++j) {
        for (int k = 0; k < layout[l - 1]; ++k) lf.weights[l - 1][j][k] = draw();
        lf.biases[l - 1][j] = draw();
      }
    }
    Network net = from_layered(lf, labels);
    if (find_clone_pairs(net).empty()) return net;
  }
}

Network permute_hidden_labels(const Network& net, std::uint64_t seed) {
  std::vector<NodeId> hidden;
  for (const auto& [v, theta] : net.biases)
    if (!net.is_output(v)) hidden.push_back(v);
  std::vector<NodeId> fresh;
  for (std::size_t i = 0; i < hidden.size(); ++i) fresh.push_back("h" + std::to_string(i + 1));
  auto taken = [&](const std::string& id) { return net.has_node(id); };
  for (auto& id : fresh)
    while (taken(id)) id = "_" + id;
  std::mt19937_64 rng(seed);
  std::shuffle(fresh.begin(), fresh.end(), rng);

  std::map<NodeId, NodeId> rename;
  for (const auto& v : net.all_nodes()) rename[v] = v;
  for (std::size_t i = 0; i < hidden.size(); ++i) rename[hidden[i]] = fresh[i];

  Network out;
  out.inputs = net.inputs;
  out.outputs = net.outputs;
  for (const auto& [v, theta] : net.biases) out.biases[rename.at(v)] = theta;
  for (const auto& [key, w] : net.edges)
    out.edges[{rename.at(key.first), rename.at(key.second)}] = w;
  return out;
}

}  // namespace gfnn
