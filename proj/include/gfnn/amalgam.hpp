#pragma once
// Amalgamation: the smallest clones-free network containing two given
// networks as ancestor subnetworks of its outputs, unique up to extensional
// isomorphism. Built by placing the arguments side by side over their shared
// inputs and then merging clone pairs bottom-up, grafting outgoing edges onto
// the surviving node; the embeddings are updated through every merge.

#include <map>
#include <vector>

#include "gfnn/network.hpp"

namespace gfnn {

struct AmalgamResult {
  Network amalgam;
  // One embedding per argument network; each is an extensional isomorphism
  // onto the ancestor subnetwork of the image of that argument's outputs.
  std::vector<std::map<NodeId, NodeId>> embeddings;
};

// Requires both arguments non-degenerate, clones-free, layered, with the same
// input label set; the result uses the first argument's input order.
AmalgamResult amalgamate(const Network& n1, const Network& n2);

// Left fold with composed embeddings; a singleton list returns the network
// itself with the identity embedding.
AmalgamResult amalgamate_many(const std::vector<Network>& nets);

}  // namespace gfnn
