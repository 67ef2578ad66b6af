#pragma once
// Isomorphism checking between networks.
//
//   extensional: node bijection fixing inputs pointwise, mapping outputs onto
//                outputs, preserving edges (both ways), weights, and biases;
//   faithful:    extensional and the identity on outputs;
//   layered:     per-level permutations of the matrix form, identity at the
//                first and last level;
//   sign-change: layered after flipping hidden-node signs (incoming row,
//                bias, outgoing column), the symmetry of odd nonlinearities.
//
// Weight equality is exact bit equality by default; pass a positive quantum
// to round weights and biases to that grid first (explicit opt-in).
//
// Clones-free inputs take a signature fast path (the matching is unique
// there); everything else falls back to backtracking. Every witness is
// replayed clause-by-clause before being returned.

#include <optional>
#include <string>
#include <vector>

#include "gfnn/layered.hpp"
#include "gfnn/network.hpp"

namespace gfnn {

enum class IsoKind { extensional, faithful, layered, sign_change };

struct IsoWitness {
  IsoKind kind = IsoKind::extensional;
  std::map<NodeId, NodeId> node_map;  // V(first) -> V(second); graph forms only

  // Matrix forms only: perms[l][j] is the first-form index of the node that
  // the second form places at position j of level l (identity at l = 0, L).
  std::vector<std::vector<int>> level_perms;
  // Sign-change only: signs[l][j] in {-1, +1}, +1 at l = 0 and l = L.
  std::vector<std::vector<int>> signs;
};

std::optional<IsoWitness> extensionally_isomorphic(const Network& n1, const Network& n2,
                                                   double quantum = 0.0);
std::optional<IsoWitness> faithfully_isomorphic(const Network& n1, const Network& n2,
                                                double quantum = 0.0);

// Exhaustive search entry points, used as the cross-check oracle for the
// signature fast path.
std::optional<IsoWitness> extensionally_isomorphic_backtracking(const Network& n1,
                                                                const Network& n2);
std::optional<IsoWitness> faithfully_isomorphic_backtracking(const Network& n1,
                                                             const Network& n2);

bool verify_extensional(const Network& n1, const Network& n2,
                        const std::map<NodeId, NodeId>& node_map);
bool verify_faithful(const Network& n1, const Network& n2,
                     const std::map<NodeId, NodeId>& node_map);

std::optional<IsoWitness> layered_isomorphic(const LayeredForm& a, const LayeredForm& b);
std::optional<IsoWitness> sign_change_isomorphic(const LayeredForm& a, const LayeredForm& b);

bool verify_layered(const LayeredForm& a, const LayeredForm& b, const IsoWitness& w);
bool verify_sign_change(const LayeredForm& a, const LayeredForm& b, const IsoWitness& w);

// Canonical sign form: flip hidden node (l, j) iff its bias is negative, or
// zero with a negative first nonzero incoming weight; processed level by
// level so each orbit has exactly one canonical representative.
std::pair<LayeredForm, std::vector<std::vector<int>>> sign_canonicalize(const LayeredForm& lf);

struct GenericityViolation {
  int clause = 0;  // 1, 2, or 3
  std::string detail;
};

// Classical full-connectivity genericity conditions on the matrix form:
//   (1) biases nonzero with pairwise distinct magnitudes per layer,
//   (2) all weights nonzero,
//   (3) no same-column weight ratio equal to a rational with denominator
//       <= 100 * D_l^2 (continued-fraction detection at tolerance 1e-12).
std::vector<GenericityViolation> fefferman_genericity(const LayeredForm& lf,
                                                      double ratio_tol = 1e-12);

// Rounds weights and biases to integer multiples of `quantum`.
Network quantize_network(const Network& net, double quantum);

}  // namespace gfnn
