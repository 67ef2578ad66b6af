#pragma once
// Canonical bottom-up fingerprints of nodes. An input node's signature is its
// label; a non-input node's is (bias, sorted list of (parent signature,
// weight)). Equal signatures imply structurally identical ancestor
// subnetworks with identical weights and biases, and within a clones-free
// network signatures are injective over nodes.
//
// Signatures are hash-consed per table, so equality within one table is a
// pointer comparison; comparisons across tables fall back to a structural
// walk. Tables are per-call values, never global.

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "gfnn/network.hpp"

namespace gfnn {

struct SigNode;
using SigPtr = std::shared_ptr<const SigNode>;

struct SigNode {
  bool input = false;
  std::string label;  // input case only
  double bias = 0.0;
  std::vector<std::pair<SigPtr, double>> parents;  // canonically sorted
  std::size_t hash = 0;
};

// Total structural order; 0 means structurally identical.
int signature_compare(const SigPtr& a, const SigPtr& b);

struct Signature {
  SigPtr node;
  friend bool operator==(const Signature& a, const Signature& b) {
    return signature_compare(a.node, b.node) == 0;
  }
  friend bool operator<(const Signature& a, const Signature& b) {
    return signature_compare(a.node, b.node) < 0;
  }
};

class SignatureTable {
 public:
  Signature input_signature(const std::string& label);
  Signature node_signature(double bias, std::vector<std::pair<SigPtr, double>> parents);

 private:
  SigPtr intern(SigNode node);
  std::unordered_multimap<std::size_t, SigPtr> pool_;
};

// Bottom-up signatures of every node, deterministic given the network.
std::map<NodeId, Signature> signatures(const Network& net);
std::map<NodeId, Signature> signatures(const Network& net, SignatureTable& table);

}  // namespace gfnn
