#pragma once
// Input splitting for single-input layered networks whose first-layer weights
// have rational dimension k >= 2: the input node is replaced by k fresh
// inputs u_1..u_k wired into the first layer by the rational matrix of the
// weight decomposition (edge u_j -> v_p iff Q_pj != 0, weight Q_pj times the
// j-th basis weight). Deeper layers are shared verbatim. At winding
// witnesses, first-layer node maps of the original at A + i t match those of
// the split network at (A + i r_1, .., A + i r_k).
//
// Also: the critical-line profile of integer-multiple first layers. Along
// the horizontal line at half the imaginary period, entries with even
// multiplier stay pole-free while odd multipliers acquire real-axis poles at
// (s - theta) / (N a); with a self-avoiding shift set some pole is hit by
// exactly one entry.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gfnn/network.hpp"
#include "gfnn/symbolic.hpp"
#include "gfnn/tanh_series.hpp"

namespace gfnn {

// First-layer structure of a single-input layered network: level-1 node ids
// in sorted order with their input weights. The decomposition passed to
// split_input must list the weights in exactly this order.
std::vector<std::pair<NodeId, double>> first_layer_weights(const Network& net);

// Requires decomp.k >= 2 and a non-degenerate clones-free layered
// single-input network. Fresh inputs are named u1..uk (prefixed when taken).
Network split_input(const Network& net, const QDecomposition& decomp,
                    const TanhSeries& series);

struct CriticalLineEntry {
  std::size_t index = 0;       // position in the caller's entry list
  long long multiplier = 0;    // after odd normalization
  double theta = 0.0;
  bool coth_like = false;      // odd multiplier: poles on the line
  std::vector<double> pole_positions;  // real t with a pole at t + i/(2a)
};

struct CriticalLineProfile {
  double a = 0.0;  // after odd normalization (a scaled by the common 2-power)
  std::vector<CriticalLineEntry> entries;
  // A pole position hit by exactly one odd entry, when the self-avoiding
  // search finds one in the window: (entry index, t*).
  std::optional<std::pair<std::size_t, double>> isolated_pole;
};

// Entries are (N, theta) with first-layer weight N * a. The common power of
// two is divided out of the multipliers (and folded into a) first; the series
// must have alpha = pi. Throws if no multiplier is odd after normalization.
CriticalLineProfile critical_line_profile(double a,
                                          const std::vector<std::pair<long long, double>>& entries,
                                          const TanhSeries& series, double t_lo, double t_hi,
                                          double separation_tol = 1e-6);

}  // namespace gfnn
