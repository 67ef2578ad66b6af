#pragma once
// Dense matrix form of a layered network: layout (D_0..D_L), weight matrices
// W^1..W^L and bias vectors. Zero matrix entries correspond to absent edges
// in the graph form; no matrix may have an identically zero row or column.

#include <string>
#include <vector>

#include "gfnn/network.hpp"

namespace gfnn {

struct LayeredForm {
  std::vector<int> layout;                               // D_0..D_L, all positive
  std::vector<std::vector<std::vector<double>>> weights; // weights[l-1][j][k] = W^l_{jk}
  std::vector<std::vector<double>> biases;               // biases[l-1][j]

  int depth() const { return static_cast<int>(layout.size()) - 1; }

  friend bool operator==(const LayeredForm&, const LayeredForm&) = default;
};

std::vector<std::string> validate_layered(const LayeredForm& lf);

// Requires the network to be layered with its outputs exactly the final-level
// nodes (in output order); hidden layers are ordered by node id, inputs by
// input order. Throws on non-layered input or a zero row/column.
LayeredForm to_layered(const Network& net);

// Inverse direction; hidden and output nodes are named "v{l}_{j}" (1-based),
// inputs keep the caller's labels. Throws if the form is invalid.
Network from_layered(const LayeredForm& lf, const std::vector<NodeId>& input_labels);

}  // namespace gfnn
