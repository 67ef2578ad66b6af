#include "gfnn/layered.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace gfnn {

std::vector<std::string> validate_layered(const LayeredForm& lf) {
  std::vector<std::string> bad;
  const int L = lf.depth();
  if (L < 1) {
    bad.push_back("layout must list at least two layers");
    return bad;
  }
  for (int d : lf.layout)
    if (d <= 0) bad.push_back("layout entries must be positive");
  if (static_cast<int>(lf.weights.size()) != L || static_cast<int>(lf.biases.size()) != L) {
    bad.push_back("weight/bias list length does not match the layout depth");
    return bad;
  }
  for (int l = 1; l <= L; ++l) {
    const auto& W = lf.weights[l - 1];
    const auto& th = lf.biases[l - 1];
    const int rows = lf.layout[l], cols = lf.layout[l - 1];
    if (static_cast<int>(W.size()) != rows ||
        static_cast<int>(th.size()) != rows) {
      bad.push_back("layer " + std::to_string(l) + " has inconsistent dimensions");
      continue;
    }
    std::vector<bool> col_nonzero(cols, false);
    for (int j = 0; j < rows; ++j) {
      if (static_cast<int>(W[j].size()) != cols) {
        bad.push_back("layer " + std::to_string(l) + " row " + std::to_string(j + 1) +
                      " has wrong width");
        continue;
      }
      bool row_nonzero = false;
      for (int k = 0; k < cols; ++k) {
        if (W[j][k] != 0.0) {
          row_nonzero = true;
          col_nonzero[k] = true;
        }
      }
      if (!row_nonzero)
        bad.push_back("layer " + std::to_string(l) + " has identically zero row " +
                      std::to_string(j + 1));
    }
    for (int k = 0; k < cols; ++k)
      if (!col_nonzero[k])
        bad.push_back("layer " + std::to_string(l) + " has identically zero column " +
                      std::to_string(k + 1));
  }
  return bad;
}

LayeredForm to_layered(const Network& net) {
  if (!is_layered(net))
    throw std::invalid_argument("to_layered: network is not layered");
  auto lv = levels(net);
  const int L = depth(net);
  if (L < 1) throw std::invalid_argument("to_layered: network has no non-input nodes");

  std::vector<std::vector<NodeId>> layer(L + 1);
  layer[0] = net.inputs;
  for (const auto& [v, theta] : net.biases) layer[lv.at(v)].push_back(v);
  for (int l = 1; l < L; ++l) std::sort(layer[l].begin(), layer[l].end());

  // The matrix form has no notion of an output subset: the final level is the
  // output tuple, ordered as the network orders its outputs.
  std::set<NodeId> final_set(layer[L].begin(), layer[L].end());
  std::set<NodeId> out_set(net.outputs.begin(), net.outputs.end());
  if (final_set != out_set)
    throw std::invalid_argument(
        "to_layered: outputs must be exactly the final-level nodes");
  layer[L] = net.outputs;

  LayeredForm lf;
  for (int l = 0; l <= L; ++l) lf.layout.push_back(static_cast<int>(layer[l].size()));
  lf.weights.resize(L);
  lf.biases.resize(L);
  for (int l = 1; l <= L; ++l) {
    const auto& cur = layer[l];
    const auto& prev = layer[l - 1];
    std::map<NodeId, int> col;
    for (std::size_t k = 0; k < prev.size(); ++k) col[prev[k]] = static_cast<int>(k);
    lf.weights[l - 1].assign(cur.size(), std::vector<double>(prev.size(), 0.0));
    lf.biases[l - 1].resize(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) lf.biases[l - 1][j] = net.biases.at(cur[j]);
    for (const auto& [key, w] : net.edges) {
      if (lv.at(key.second) != l) continue;
      int j = static_cast<int>(std::find(cur.begin(), cur.end(), key.second) - cur.begin());
      lf.weights[l - 1][j][col.at(key.first)] = w;
    }
  }
  auto bad = validate_layered(lf);
  if (!bad.empty()) throw std::invalid_argument("to_layered: " + bad.front());
  return lf;
}

Network from_layered(const LayeredForm& lf, const std::vector<NodeId>& input_labels) {
  auto bad = validate_layered(lf);
  if (!bad.empty()) throw std::invalid_argument("from_layered: " + bad.front());
  if (static_cast<int>(input_labels.size()) != lf.layout[0])
    throw std::invalid_argument("from_layered: input label count does not match D_0");
  std::set<NodeId> label_set(input_labels.begin(), input_labels.end());
  if (label_set.size() != input_labels.size())
    throw std::invalid_argument("from_layered: duplicate input labels");

  // Generated names must not collide with caller-supplied input labels.
  std::string prefix = "v";
  auto clashes = [&](const std::string& p) {
    for (const auto& lbl : input_labels)
      if (lbl.rfind(p, 0) == 0) return true;
    return false;
  };
  while (clashes(prefix)) prefix = "_" + prefix;

  const int L = lf.depth();
  std::vector<std::vector<NodeId>> layer(L + 1);
  layer[0] = input_labels;
  for (int l = 1; l <= L; ++l)
    for (int j = 0; j < lf.layout[l]; ++j)
      layer[l].push_back(prefix + std::to_string(l) + "_" + std::to_string(j + 1));

  Network net;
  net.inputs = input_labels;
  net.outputs = layer[L];
  for (int l = 1; l <= L; ++l)
    for (int j = 0; j < lf.layout[l]; ++j) {
      net.biases[layer[l][j]] = lf.biases[l - 1][j];
      for (int k = 0; k < lf.layout[l - 1]; ++k)
        if (lf.weights[l - 1][j][k] != 0.0)
          net.edges[{layer[l - 1][k], layer[l][j]}] = lf.weights[l - 1][j][k];
    }
  return net;
}

}  // namespace gfnn
