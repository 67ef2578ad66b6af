#include "gfnn/isomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gfnn/signature.hpp"

namespace gfnn {

namespace {

bool same_input_sets(const Network& n1, const Network& n2) {
  std::set<NodeId> a(n1.inputs.begin(), n1.inputs.end());
  std::set<NodeId> b(n2.inputs.begin(), n2.inputs.end());
  return a == b;
}

std::set<NodeId> output_set(const Network& n) {
  return {n.outputs.begin(), n.outputs.end()};
}

}  // namespace

bool verify_extensional(const Network& n1, const Network& n2,
                        const std::map<NodeId, NodeId>& node_map) {
  if (node_map.size() != n1.node_count() || n1.node_count() != n2.node_count()) return false;
  std::set<NodeId> image;
  for (const auto& [v, u] : node_map) {
    if (!n1.has_node(v) || !n2.has_node(u)) return false;
    if (!image.insert(u).second) return false;
  }
  for (const auto& v : n1.inputs) {
    auto it = node_map.find(v);
    if (it == node_map.end() || it->second != v || !n2.is_input(v)) return false;
  }
  std::set<NodeId> mapped_outputs;
  for (const auto& w : n1.outputs) mapped_outputs.insert(node_map.at(w));
  if (mapped_outputs != output_set(n2)) return false;
  for (const auto& [v, theta] : n1.biases) {
    auto it = n2.biases.find(node_map.at(v));
    if (it == n2.biases.end() || it->second != theta) return false;
  }
  if (n1.edges.size() != n2.edges.size()) return false;
  for (const auto& [key, w] : n1.edges) {
    auto it = n2.edges.find({node_map.at(key.first), node_map.at(key.second)});
    if (it == n2.edges.end() || it->second != w) return false;
  }
  return true;
}

bool verify_faithful(const Network& n1, const Network& n2,
                     const std::map<NodeId, NodeId>& node_map) {
  if (!verify_extensional(n1, n2, node_map)) return false;
  if (output_set(n1) != output_set(n2)) return false;
  for (const auto& w : n1.outputs)
    if (node_map.at(w) != w) return false;
  return true;
}

namespace {

// Backtracking over node assignments, ordered by (level, degree). `fix_outputs`
// additionally pins every output to itself.
class Matcher {
 public:
  Matcher(const Network& n1, const Network& n2, bool fix_outputs)
      : n1_(n1), n2_(n2), adj1_(n1), adj2_(n2), fix_outputs_(fix_outputs) {}

  std::optional<std::map<NodeId, NodeId>> run() {
    if (!same_input_sets(n1_, n2_)) return std::nullopt;
    if (n1_.node_count() != n2_.node_count() || n1_.edges.size() != n2_.edges.size())
      return std::nullopt;
    if (n1_.outputs.size() != n2_.outputs.size()) return std::nullopt;
    lv1_ = levels(n1_);
    lv2_ = levels(n2_);
    for (const auto& v : n1_.inputs) {
      map_[v] = v;
      used_.insert(v);
    }
    order_.clear();
    for (const auto& [v, theta] : n1_.biases) order_.push_back(v);
    std::sort(order_.begin(), order_.end(), [&](const NodeId& a, const NodeId& b) {
      auto key = [&](const NodeId& v) {
        return std::tuple<int, std::size_t, std::size_t, const NodeId&>(
            lv1_.at(v), degree_in(adj1_, v), degree_out(adj1_, v), v);
      };
      return key(a) < key(b);
    });
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  static std::size_t degree_in(const Adjacency& adj, const NodeId& v) {
    auto it = adj.parents.find(v);
    return it == adj.parents.end() ? 0 : it->second.size();
  }
  static std::size_t degree_out(const Adjacency& adj, const NodeId& v) {
    auto it = adj.children.find(v);
    return it == adj.children.end() ? 0 : it->second.size();
  }

  bool compatible(const NodeId& v, const NodeId& u) const {
    if (lv1_.at(v) != lv2_.at(u)) return false;
    if (n1_.biases.at(v) != n2_.biases.at(u)) return false;
    if (degree_in(adj1_, v) != degree_in(adj2_, u)) return false;
    if (degree_out(adj1_, v) != degree_out(adj2_, u)) return false;
    if (n1_.is_output(v) != n2_.is_output(u)) return false;
    // Edges towards already-assigned neighbours must correspond exactly.
    auto p1 = adj1_.parents.find(v);
    if (p1 != adj1_.parents.end())
      for (const auto& [p, w] : p1->second) {
        auto it = map_.find(p);
        if (it == map_.end()) continue;
        auto e = n2_.edges.find({it->second, u});
        if (e == n2_.edges.end() || e->second != w) return false;
      }
    auto c1 = adj1_.children.find(v);
    if (c1 != adj1_.children.end())
      for (const auto& c : c1->second) {
        auto it = map_.find(c);
        if (it == map_.end()) continue;
        auto e = n2_.edges.find({u, it->second});
        if (e == n2_.edges.end() || e->second != n1_.edges.at({v, c})) return false;
      }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == order_.size()) return true;
    const NodeId& v = order_[i];
    if (fix_outputs_ && n1_.is_output(v)) {
      if (used_.count(v) || !n2_.biases.count(v) || !compatible(v, v)) return false;
      map_[v] = v;
      used_.insert(v);
      if (extend(i + 1)) return true;
      map_.erase(v);
      used_.erase(v);
      return false;
    }
    for (const auto& [u, theta] : n2_.biases) {
      if (used_.count(u) || !compatible(v, u)) continue;
      map_[v] = u;
      used_.insert(u);
      if (extend(i + 1)) return true;
      map_.erase(v);
      used_.erase(u);
    }
    return false;
  }

  const Network& n1_;
  const Network& n2_;
  Adjacency adj1_, adj2_;
  bool fix_outputs_;
  std::map<NodeId, int> lv1_, lv2_;
  std::vector<NodeId> order_;
  std::map<NodeId, NodeId> map_;
  std::set<NodeId> used_;
};

// Unique candidate bijection for clones-free networks: match equal signatures.
std::optional<std::map<NodeId, NodeId>> signature_match(const Network& n1, const Network& n2) {
  SignatureTable table;
  auto s1 = signatures(n1, table);
  auto s2 = signatures(n2, table);
  std::map<const SigNode*, NodeId> lookup;
  for (const auto& [u, sig] : s2) lookup[sig.node.get()] = u;
  if (lookup.size() != n2.node_count()) return std::nullopt;  // duplicate signatures
  std::map<NodeId, NodeId> map;
  std::set<NodeId> image;
  for (const auto& [v, sig] : s1) {
    auto it = lookup.find(sig.node.get());
    if (it == lookup.end()) return std::nullopt;
    map[v] = it->second;
    image.insert(it->second);
  }
  if (image.size() != n2.node_count()) return std::nullopt;
  return map;
}

std::optional<IsoWitness> finish(IsoKind kind, const Network& n1, const Network& n2,
                                 std::optional<std::map<NodeId, NodeId>> map) {
  if (!map) return std::nullopt;
  bool ok = kind == IsoKind::faithful ? verify_faithful(n1, n2, *map)
                                      : verify_extensional(n1, n2, *map);
  if (!ok) return std::nullopt;
  IsoWitness w;
  w.kind = kind;
  w.node_map = std::move(*map);
  return w;
}

std::optional<IsoWitness> isomorphic_impl(const Network& n1_in, const Network& n2_in,
                                          IsoKind kind, double quantum) {
  const Network n1 = quantum > 0.0 ? quantize_network(n1_in, quantum) : n1_in;
  const Network n2 = quantum > 0.0 ? quantize_network(n2_in, quantum) : n2_in;
  if (!same_input_sets(n1, n2))
    throw std::invalid_argument("isomorphism: input label sets differ");
  const bool fast = find_clone_pairs(n1).empty() && find_clone_pairs(n2).empty() &&
                    is_non_degenerate(n1) && is_non_degenerate(n2);
  if (fast) {
    // The signature matching is the only possible witness here, so a failed
    // verification is conclusive.
    return finish(kind, n1, n2, signature_match(n1, n2));
  }
  Matcher m(n1, n2, kind == IsoKind::faithful);
  return finish(kind, n1, n2, m.run());
}

}  // namespace

std::optional<IsoWitness> extensionally_isomorphic(const Network& n1, const Network& n2,
                                                   double quantum) {
  return isomorphic_impl(n1, n2, IsoKind::extensional, quantum);
}

std::optional<IsoWitness> faithfully_isomorphic(const Network& n1, const Network& n2,
                                                double quantum) {
  return isomorphic_impl(n1, n2, IsoKind::faithful, quantum);
}

std::optional<IsoWitness> extensionally_isomorphic_backtracking(const Network& n1,
                                                                const Network& n2) {
  if (!same_input_sets(n1, n2))
    throw std::invalid_argument("isomorphism: input label sets differ");
  Matcher m(n1, n2, false);
  return finish(IsoKind::extensional, n1, n2, m.run());
}

std::optional<IsoWitness> faithfully_isomorphic_backtracking(const Network& n1,
                                                             const Network& n2) {
  if (!same_input_sets(n1, n2))
    throw std::invalid_argument("isomorphism: input label sets differ");
  Matcher m(n1, n2, true);
  return finish(IsoKind::faithful, n1, n2, m.run());
}

// ---------------------------------------------------------------------------
// Matrix-form relations.

namespace {

void require_valid(const LayeredForm& lf, const char* where) {
  auto bad = validate_layered(lf);
  if (!bad.empty()) throw std::invalid_argument(std::string(where) + ": " + bad.front());
}

// Enumerates per-level permutations consistent with the weight and bias
// constraints, level by level.
class LayeredMatcher {
 public:
  LayeredMatcher(const LayeredForm& a, const LayeredForm& b) : a_(a), b_(b) {}

  std::optional<std::vector<std::vector<int>>> run() {
    const int L = a_.depth();
    perms_.assign(L + 1, {});
    perms_[0].resize(a_.layout[0]);
    for (int k = 0; k < a_.layout[0]; ++k) perms_[0][k] = k;
    if (solve_level(1)) return perms_;
    return std::nullopt;
  }

 private:
  bool row_matches(int l, int j_b, int r_a) const {
    if (b_.biases[l - 1][j_b] != a_.biases[l - 1][r_a]) return false;
    const auto& prev = perms_[l - 1];
    for (int k = 0; k < b_.layout[l - 1]; ++k)
      if (b_.weights[l - 1][j_b][k] != a_.weights[l - 1][r_a][prev[k]]) return false;
    return true;
  }

  bool solve_level(int l) {
    const int L = a_.depth();
    if (l == L) {
      // Final permutation is the identity.
      for (int j = 0; j < a_.layout[L]; ++j)
        if (!row_matches(L, j, j)) return false;
      perms_[L].resize(a_.layout[L]);
      for (int j = 0; j < a_.layout[L]; ++j) perms_[L][j] = j;
      return true;
    }
    std::vector<int> perm(b_.layout[l], -1);
    std::vector<bool> used(a_.layout[l], false);
    return assign_rows(l, 0, perm, used);
  }

  bool assign_rows(int l, int j, std::vector<int>& perm, std::vector<bool>& used) {
    if (j == b_.layout[l]) {
      perms_[l] = perm;
      if (solve_level(l + 1)) return true;
      return false;
    }
    for (int r = 0; r < a_.layout[l]; ++r) {
      if (used[r] || !row_matches(l, j, r)) continue;
      perm[j] = r;
      used[r] = true;
      if (assign_rows(l, j + 1, perm, used)) return true;
      perm[j] = -1;
      used[r] = false;
    }
    return false;
  }

  const LayeredForm& a_;
  const LayeredForm& b_;
  std::vector<std::vector<int>> perms_;
};

}  // namespace

bool verify_layered(const LayeredForm& a, const LayeredForm& b, const IsoWitness& w) {
  if (a.layout != b.layout) return false;
  const int L = a.depth();
  if (static_cast<int>(w.level_perms.size()) != L + 1) return false;
  for (int l = 0; l <= L; ++l) {
    if (static_cast<int>(w.level_perms[l].size()) != a.layout[l]) return false;
    std::set<int> seen(w.level_perms[l].begin(), w.level_perms[l].end());
    if (static_cast<int>(seen.size()) != a.layout[l]) return false;
    if (l == 0 || l == L)
      for (int j = 0; j < a.layout[l]; ++j)
        if (w.level_perms[l][j] != j) return false;
  }
  for (int l = 1; l <= L; ++l)
    for (int j = 0; j < a.layout[l]; ++j) {
      if (b.biases[l - 1][j] != a.biases[l - 1][w.level_perms[l][j]]) return false;
      for (int k = 0; k < a.layout[l - 1]; ++k)
        if (b.weights[l - 1][j][k] !=
            a.weights[l - 1][w.level_perms[l][j]][w.level_perms[l - 1][k]])
          return false;
    }
  return true;
}

std::optional<IsoWitness> layered_isomorphic(const LayeredForm& a, const LayeredForm& b) {
  require_valid(a, "layered_isomorphic");
  require_valid(b, "layered_isomorphic");
  if (a.layout != b.layout) return std::nullopt;
  LayeredMatcher m(a, b);
  auto perms = m.run();
  if (!perms) return std::nullopt;
  IsoWitness w;
  w.kind = IsoKind::layered;
  w.level_perms = std::move(*perms);
  if (!verify_layered(a, b, w)) return std::nullopt;
  return w;
}

std::pair<LayeredForm, std::vector<std::vector<int>>> sign_canonicalize(const LayeredForm& lf) {
  require_valid(lf, "sign_canonicalize");
  LayeredForm c = lf;
  const int L = c.depth();
  std::vector<std::vector<int>> signs(L + 1);
  for (int l = 0; l <= L; ++l) signs[l].assign(c.layout[l], 1);
  for (int l = 1; l < L; ++l) {
    for (int j = 0; j < c.layout[l]; ++j) {
      double theta = c.biases[l - 1][j];
      bool flip = theta < 0.0;
      if (theta == 0.0) {
        for (int k = 0; k < c.layout[l - 1]; ++k) {
          double w = c.weights[l - 1][j][k];
          if (w != 0.0) {
            flip = w < 0.0;
            break;
          }
        }
      }
      if (!flip) continue;
      signs[l][j] = -1;
      c.biases[l - 1][j] = -c.biases[l - 1][j];
      for (int k = 0; k < c.layout[l - 1]; ++k) c.weights[l - 1][j][k] = -c.weights[l - 1][j][k];
      for (int r = 0; r < c.layout[l + 1]; ++r) c.weights[l][r][j] = -c.weights[l][r][j];
    }
  }
  return {c, signs};
}

bool verify_sign_change(const LayeredForm& a, const LayeredForm& b, const IsoWitness& w) {
  if (a.layout != b.layout) return false;
  const int L = a.depth();
  if (static_cast<int>(w.signs.size()) != L + 1) return false;
  for (int l = 0; l <= L; ++l) {
    if (static_cast<int>(w.signs[l].size()) != a.layout[l]) return false;
    for (int s : w.signs[l])
      if (s != 1 && s != -1) return false;
    if (l == 0 || l == L)
      for (int s : w.signs[l])
        if (s != 1) return false;
  }
  for (int l = 1; l <= L; ++l)
    for (int j = 0; j < a.layout[l]; ++j) {
      int ej = w.signs[l][j];
      if (b.biases[l - 1][j] != ej * a.biases[l - 1][w.level_perms[l][j]]) return false;
      for (int k = 0; k < a.layout[l - 1]; ++k)
        if (b.weights[l - 1][j][k] !=
            ej * a.weights[l - 1][w.level_perms[l][j]][w.level_perms[l - 1][k]] *
                w.signs[l - 1][k])
          return false;
    }
  return true;
}

std::optional<IsoWitness> sign_change_isomorphic(const LayeredForm& a, const LayeredForm& b) {
  auto [ca, ea] = sign_canonicalize(a);
  auto [cb, eb] = sign_canonicalize(b);
  auto inner = layered_isomorphic(ca, cb);
  if (!inner) return std::nullopt;
  IsoWitness w;
  w.kind = IsoKind::sign_change;
  w.level_perms = inner->level_perms;
  const int L = a.depth();
  w.signs.resize(L + 1);
  for (int l = 0; l <= L; ++l) {
    w.signs[l].resize(a.layout[l]);
    for (int j = 0; j < a.layout[l]; ++j)
      w.signs[l][j] = eb[l][j] * ea[l][w.level_perms[l][j]];
  }
  if (!verify_sign_change(a, b, w)) return std::nullopt;
  return w;
}

// ---------------------------------------------------------------------------
// Genericity conditions.

namespace {

// Best rational approximation p/q with q <= max_den via continued fractions;
// accepted when |x - p/q| <= tol * max(1, |x|).
std::optional<std::pair<long long, long long>> rational_reconstruct(double x, long long max_den,
                                                                    double tol) {
  double y = x;
  long long p0 = 1, q0 = 0, p1 = static_cast<long long>(std::floor(y)), q1 = 1;
  y -= std::floor(y);
  for (int it = 0; it < 64; ++it) {
    if (std::abs(x - static_cast<double>(p1) / q1) <= tol * std::max(1.0, std::abs(x)))
      return std::make_pair(p1, q1);
    if (y == 0.0) break;
    y = 1.0 / y;
    double a = std::floor(y);
    if (a > 4e18 / std::max<long long>(q1, 1)) break;
    long long p2 = static_cast<long long>(a) * p1 + p0;
    long long q2 = static_cast<long long>(a) * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    y -= a;
  }
  return std::nullopt;
}

}  // namespace

std::vector<GenericityViolation> fefferman_genericity(const LayeredForm& lf, double ratio_tol) {
  require_valid(lf, "fefferman_genericity");
  std::vector<GenericityViolation> out;
  const int L = lf.depth();
  for (int l = 1; l <= L; ++l) {
    const auto& th = lf.biases[l - 1];
    for (int j = 0; j < lf.layout[l]; ++j)
      if (th[j] == 0.0)
        out.push_back({1, "layer " + std::to_string(l) + " bias " + std::to_string(j + 1) +
                              " is zero"});
    for (int j = 0; j < lf.layout[l]; ++j)
      for (int j2 = j + 1; j2 < lf.layout[l]; ++j2)
        if (std::abs(th[j]) == std::abs(th[j2]))
          out.push_back({1, "layer " + std::to_string(l) + " biases " + std::to_string(j + 1) +
                                " and " + std::to_string(j2 + 1) + " share a magnitude"});
    const auto& W = lf.weights[l - 1];
    for (int j = 0; j < lf.layout[l]; ++j)
      for (int k = 0; k < lf.layout[l - 1]; ++k)
        if (W[j][k] == 0.0)
          out.push_back({2, "layer " + std::to_string(l) + " weight (" + std::to_string(j + 1) +
                                "," + std::to_string(k + 1) + ") is zero"});
    const long long max_den = 100LL * lf.layout[l] * lf.layout[l];
    for (int k = 0; k < lf.layout[l - 1]; ++k)
      for (int j = 0; j < lf.layout[l]; ++j)
        for (int j2 = 0; j2 < lf.layout[l]; ++j2) {
          if (j == j2 || W[j][k] == 0.0 || W[j2][k] == 0.0) continue;
          auto pq = rational_reconstruct(W[j][k] / W[j2][k], max_den, ratio_tol);
          if (pq)
            out.push_back({3, "layer " + std::to_string(l) + " column " + std::to_string(k + 1) +
                                  " rows " + std::to_string(j + 1) + "/" + std::to_string(j2 + 1) +
                                  " ratio ~ " + std::to_string(pq->first) + "/" +
                                  std::to_string(pq->second)});
        }
  }
  return out;
}

Network quantize_network(const Network& net, double quantum) {
  if (!(quantum > 0.0)) throw std::invalid_argument("quantize_network: quantum must be positive");
  Network q = net;
  for (auto& [v, theta] : q.biases) theta = std::round(theta / quantum) * quantum;
  for (auto& [key, w] : q.edges) {
    w = std::round(w / quantum) * quantum;
    if (w == 0.0)
      throw std::invalid_argument("quantize_network: a weight rounded to zero");
  }
  return q;
}

}  // namespace gfnn
