#include "gfnn/signature.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace gfnn {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_double(double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  return static_cast<std::size_t>(bits * 0xff51afd7ed558ccdull);
}

std::size_t structural_hash(const SigNode& n) {
  std::size_t h = n.input ? 0x1 : 0x2;
  if (n.input) {
    for (char c : n.label) h = mix(h, static_cast<std::size_t>(static_cast<unsigned char>(c)));
    return h;
  }
  h = mix(h, hash_double(n.bias));
  for (const auto& [p, w] : n.parents) {
    h = mix(h, p->hash);
    h = mix(h, hash_double(w));
  }
  return h;
}

int cmp_double(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

int signature_compare(const SigPtr& a, const SigPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->input != b->input) return a->input ? -1 : 1;
  if (a->input) return a->label.compare(b->label) < 0 ? -1 : (a->label == b->label ? 0 : 1);
  if (int c = cmp_double(a->bias, b->bias)) return c;
  if (a->parents.size() != b->parents.size())
    return a->parents.size() < b->parents.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->parents.size(); ++i) {
    if (int c = signature_compare(a->parents[i].first, b->parents[i].first)) return c;
    if (int c = cmp_double(a->parents[i].second, b->parents[i].second)) return c;
  }
  return 0;
}

SigPtr SignatureTable::intern(SigNode node) {
  node.hash = structural_hash(node);
  auto probe = std::make_shared<const SigNode>(std::move(node));
  auto [lo, hi] = pool_.equal_range(probe->hash);
  for (auto it = lo; it != hi; ++it)
    if (signature_compare(it->second, probe) == 0) return it->second;
  pool_.emplace(probe->hash, probe);
  return probe;
}

Signature SignatureTable::input_signature(const std::string& label) {
  SigNode n;
  n.input = true;
  n.label = label;
  return Signature{intern(std::move(n))};
}

Signature SignatureTable::node_signature(double bias,
                                         std::vector<std::pair<SigPtr, double>> parents) {
  std::sort(parents.begin(), parents.end(), [](const auto& a, const auto& b) {
    int c = signature_compare(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  SigNode n;
  n.bias = bias;
  n.parents = std::move(parents);
  return Signature{intern(std::move(n))};
}

std::map<NodeId, Signature> signatures(const Network& net, SignatureTable& table) {
  Adjacency adj(net);
  std::map<NodeId, Signature> sig;
  for (const auto& v : topo_order(net)) {
    if (net.is_input(v)) {
      sig.emplace(v, table.input_signature(v));
      continue;
    }
    std::vector<std::pair<SigPtr, double>> parents;
    for (const auto& [p, w] : adj.parents.at(v)) parents.emplace_back(sig.at(p).node, w);
    sig.emplace(v, table.node_signature(net.biases.at(v), std::move(parents)));
  }
  return sig;
}

std::map<NodeId, Signature> signatures(const Network& net) {
  SignatureTable table;
  return signatures(net, table);
}

}  // namespace gfnn
