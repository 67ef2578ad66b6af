#pragma once
// Input anchoring and single-input gluing.
//
// Anchoring fixes one input to a constant, removes every node whose ancestors
// contain no other input, propagates the resulting constants into the biases
// of the surviving frontier, and reports the constant values of any outputs
// that were removed. For retained outputs the anchored map agrees with the
// original map at the anchored point; removed outputs were constant in the
// remaining inputs.
//
// Gluing prepends a single fresh input feeding every former input through
// pairwise distinct nonzero weights; former inputs become level-1 nodes with
// bias zero.

#include <map>
#include <optional>
#include <vector>

#include "gfnn/eval.hpp"
#include "gfnn/network.hpp"
#include "gfnn/nonlinearity.hpp"

namespace gfnn {

struct AnchorResult {
  Network anchored;
  std::map<NodeId, double> dropped_output_values;          // constants of removed outputs
  std::map<NodeId, std::pair<double, double>> modified_biases;  // old -> new
};

// Requires >= 2 inputs and an existing input node to anchor.
AnchorResult anchor_input(const Network& net, const NodeId& anchored, double a,
                          const Nonlinearity& rho);

struct AnchorSearchResult {
  double a = 0.0;
  AnchorResult result;
};

// First candidate whose anchored network has no clone pairs.
std::optional<AnchorSearchResult> find_clone_free_anchor(const Network& net,
                                                         const NodeId& anchored,
                                                         const Nonlinearity& rho,
                                                         const std::vector<double>& candidates);

// 0, +-1, +-1/2, then 16 seeded uniform draws from [-1, 1].
std::vector<double> default_anchor_candidates(uint64_t seed = 0x5eed);

// Each returned network has the single fresh input `new_input`; the realized
// map composes the original map with t -> (rho(w_v * t))_v. Weights must be
// keyed by the shared input set, pairwise distinct and nonzero.
std::vector<Network> glue_single_input(const std::vector<Network>& nets,
                                       const std::map<NodeId, double>& weights,
                                       const NodeId& new_input = "v_in");

}  // namespace gfnn
