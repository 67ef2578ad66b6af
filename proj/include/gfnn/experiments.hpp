#pragma once
// Randomized experiment harnesses: linear-independence probing of realized
// maps via the smallest singular value of a column-normalized sample matrix,
// and seeded identifiability trials comparing map equality against faithful
// isomorphism. Identical inputs and seeds reproduce reports bit-identically
// (wall-clock time is carried separately and excluded from the canonical
// text).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfnn/eval.hpp"
#include "gfnn/network.hpp"
#include "gfnn/nonlinearity.hpp"

namespace gfnn {

struct LiTestReport {
  double min_singular = 0.0;
  // Candidate dependency (lambda_0 for the constant function, then one
  // coefficient per network) when the minimum falls below the threshold.
  std::optional<std::vector<double>> dependency;
  int samples = 0;
  double threshold = 0.0;
};

// Samples the maps of single-output networks (shared input list) at `samples`
// uniform points of [-3, 3]^d, prepends the constant-1 column, normalizes
// columns, and reports the smallest singular value. Requires
// samples > networks + 1.
LiTestReport li_test(const std::vector<Network>& networks, const Nonlinearity& sigma,
                     int samples, std::uint64_t seed, double threshold = 1e-8);

// Appends the clipped-ReLU zero gadget to a single-output network: three
// nodes with weights 1, 2, 2 and biases 0, 0, -1 feeding a final node with
// weights 1, -1/2, -1/2 and bias 0. Under the clipped-ReLU nonlinearity the
// new output is identically zero. The appended node ids are shared across
// calls so gadgets built on different bases stay comparable.
Network append_clipped_relu_zero_block(const Network& single_output);

enum class TrialArm { permuted_copy, fresh_pair, clipped_relu_zero };

std::string to_string(TrialArm arm);

struct TrialRecord {
  int index = 0;
  TrialArm arm = TrialArm::permuted_copy;
  bool maps_equal = false;      // max diff <= eq_tol
  bool faithful_iso = false;
  double max_diff = 0.0;
  bool contradiction = false;   // verdicts disagree with theory
  bool counterexample = false;  // equal maps, non-isomorphic (control arm)
  std::string fixture;          // serialized pair, only when contradiction
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  int trials = 0;
  TrialArm arm = TrialArm::permuted_copy;
  std::vector<TrialRecord> records;
  int equal_count = 0;
  int iso_count = 0;
  int contradiction_count = 0;
  int counterexample_count = 0;
  double max_equal_residual = 0.0;  // largest diff among equal-verdict trials
  double wall_seconds = 0.0;        // excluded from canonical_text()

  std::string canonical_text() const;
};

struct IdentifiabilityConfig {
  std::vector<std::vector<int>> layouts = {{1, 3, 1}, {1, 2, 2, 1}};
  GridSpec grid;
  double eq_tol = 1e-12;
  double witness_tol = 1e-6;
};

// Per trial: draws a pair per the arm (hidden-relabeled copy / two fresh
// draws / zero-gadget extensions of two fresh draws under clipped ReLU,
// ignoring sigma for the control arm), then records map equality over the
// grid and the faithful-isomorphism verdict. Any disagreement between the
// two is persisted with its full fixtures.
ExperimentReport identifiability_experiment(const IdentifiabilityConfig& config,
                                            const Nonlinearity& sigma, TrialArm arm,
                                            int trials, std::uint64_t seed);

}  // namespace gfnn
