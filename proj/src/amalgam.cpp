#include "gfnn/amalgam.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gfnn {

namespace {

void require_amalgam_ready(const Network& n, const char* which) {
  auto bad = validate(n);
  if (!bad.empty())
    throw std::invalid_argument(std::string("amalgamate: ") + which + " invalid: " + bad.front());
  if (!is_non_degenerate(n))
    throw std::invalid_argument(std::string("amalgamate: ") + which + " is degenerate");
  if (!find_clone_pairs(n).empty())
    throw std::invalid_argument(std::string("amalgamate: ") + which + " has clone pairs");
  if (!is_layered(n))
    throw std::invalid_argument(std::string("amalgamate: ") + which + " is not layered");
}

NodeId tagged(const NodeId& v, int side) { return v + "@" + std::to_string(side); }

}  // namespace

AmalgamResult amalgamate(const Network& n1, const Network& n2) {
  require_amalgam_ready(n1, "first argument");
  require_amalgam_ready(n2, "second argument");
  std::set<NodeId> in1(n1.inputs.begin(), n1.inputs.end());
  std::set<NodeId> in2(n2.inputs.begin(), n2.inputs.end());
  if (in1 != in2) throw std::invalid_argument("amalgamate: input label sets differ");

  // Side-by-side union over the shared inputs.
  Network a;
  a.inputs = n1.inputs;
  std::map<NodeId, NodeId> e1, e2;
  for (const auto& v : n1.inputs) {
    e1[v] = v;
    e2[v] = v;
  }
  auto add_side = [&](const Network& n, std::map<NodeId, NodeId>& embed, int side) {
    for (const auto& [v, theta] : n.biases) {
      embed[v] = tagged(v, side);
      a.biases[embed[v]] = theta;
    }
    for (const auto& [key, w] : n.edges) a.edges[{embed[key.first], embed[key.second]}] = w;
    for (const auto& v : n.outputs)
      if (!a.is_output(embed[v])) a.outputs.push_back(embed[v]);
  };
  add_side(n1, e1, 1);
  add_side(n2, e2, 2);

  // Merge clone pairs bottom-up; parents must be unified before children can
  // be recognized as clones.
  for (;;) {
    auto pairs = find_clone_pairs(a);
    if (pairs.empty()) break;
    auto lv = levels(a);
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
      return std::tuple(lv.at(p.first), p.first, p.second) <
             std::tuple(lv.at(q.first), q.first, q.second);
    });
    NodeId keep = std::min(best->first, best->second);
    NodeId drop = std::max(best->first, best->second);
    if (a.is_output(drop)) {
      if (a.is_output(keep))
        std::erase(a.outputs, drop);
      else
        std::replace(a.outputs.begin(), a.outputs.end(), drop, keep);
    }
    a = merge_clone_pair(a, keep, drop);
    for (auto* embed : {&e1, &e2})
      for (auto& [v, img] : *embed)
        if (img == drop) img = keep;
  }

  return AmalgamResult{std::move(a), {std::move(e1), std::move(e2)}};
}

AmalgamResult amalgamate_many(const std::vector<Network>& nets) {
  if (nets.empty()) throw std::invalid_argument("amalgamate_many: empty list");
  AmalgamResult acc;
  acc.amalgam = nets.front();
  require_amalgam_ready(acc.amalgam, "first argument");
  std::map<NodeId, NodeId> identity;
  for (const auto& v : acc.amalgam.all_nodes()) identity[v] = v;
  acc.embeddings = {identity};
  for (std::size_t i = 1; i < nets.size(); ++i) {
    AmalgamResult step = amalgamate(acc.amalgam, nets[i]);
    std::vector<std::map<NodeId, NodeId>> composed;
    for (const auto& embed : acc.embeddings) {
      std::map<NodeId, NodeId> e;
      for (const auto& [v, img] : embed) e[v] = step.embeddings[0].at(img);
      composed.push_back(std::move(e));
    }
    composed.push_back(step.embeddings[1]);
    acc.amalgam = std::move(step.amalgam);
    acc.embeddings = std::move(composed);
  }
  return acc;
}

}  // namespace gfnn
