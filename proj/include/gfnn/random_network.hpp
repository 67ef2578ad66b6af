#pragma once
// Seeded generation of valid, non-degenerate, clones-free layered networks.

#include <cstdint>
#include <vector>

#include "gfnn/network.hpp"

namespace gfnn {

struct WeightDist {
  // Uniform on [-hi_mag, -lo_mag] U [lo_mag, hi_mag]; bounded away from zero.
  double lo_mag = 0.1;
  double hi_mag = 2.0;
};

// Dense layered network with the given layout; inputs are named x1..xD0
// unless labels are supplied. Clone collisions (measure zero) trigger a
// regeneration with a derived seed. Identical seeds give identical networks.
Network random_clonesfree_network(std::uint64_t seed, const std::vector<int>& layout,
                                  const WeightDist& dist = {},
                                  const std::vector<NodeId>* input_labels = nullptr);

// Same network with hidden non-output nodes renamed by a seeded permutation;
// inputs and outputs keep their ids, so the copy is faithfully isomorphic to
// the original by construction.
Network permute_hidden_labels(const Network& net, std::uint64_t seed);

}  // namespace gfnn
