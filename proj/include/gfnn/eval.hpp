#pragma once
// Realized maps of networks: real evaluation for any nonlinearity, complex
// evaluation (series only) with pole-proximity tracking, and grid-based map
// equality with witness extraction.
//
// Per-node sums always run over parents in sorted node-id order, so values
// are independent of the traversal order bit-for-bit.

#include <complex>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "gfnn/network.hpp"
#include "gfnn/nonlinearity.hpp"

namespace gfnn {

using RealAssignment = std::map<NodeId, double>;
using ComplexAssignment = std::map<NodeId, std::complex<double>>;

// Values of every node; `order` optionally overrides the processing order
// (any topological order gives bit-identical results).
std::map<NodeId, double> eval_all_nodes(const Network& net, const Nonlinearity& rho,
                                        const RealAssignment& x,
                                        const std::vector<NodeId>* order = nullptr);

// Output nodes only, keyed by id.
std::map<NodeId, double> eval_real(const Network& net, const Nonlinearity& rho,
                                   const RealAssignment& x);

// Output values in output-list order.
std::vector<double> eval_output_vector(const Network& net, const Nonlinearity& rho,
                                       const std::vector<double>& x);

struct DomainError {
  NodeId node;                 // whose pre-activation hit the pole
  std::complex<double> pole;
  double distance = 0.0;
};

// Complex evaluation along the holomorphic continuation; aborts with a
// DomainError when a pre-activation comes within pole_tol of a pole of the
// truncated series. Requires a series nonlinearity.
std::variant<std::map<NodeId, std::complex<double>>, DomainError> eval_complex_all_nodes(
    const Network& net, const Nonlinearity& sigma, const ComplexAssignment& z,
    double pole_tol = 1e-9);

std::variant<std::map<NodeId, std::complex<double>>, DomainError> eval_complex(
    const Network& net, const Nonlinearity& sigma, const ComplexAssignment& z,
    double pole_tol = 1e-9);

// Sampling spec for map comparison: a uniform grid per input dimension for
// one or two inputs, Latin-hypercube samples beyond that.
struct GridSpec {
  double lo = -3.0;
  double hi = 3.0;
  int per_dim = 601;
  int lhs_cap = 10000;
  uint64_t lhs_seed = 1;
};

std::vector<std::vector<double>> grid_points(int dims, const GridSpec& spec);

struct MapsWitness {
  std::vector<double> point;
  NodeId out1, out2;  // positionally paired outputs where the max was seen
  double diff = 0.0;
};

struct MapsEqualResult {
  bool equal = false;
  double max_diff = 0.0;
  std::optional<MapsWitness> witness;  // maximizing point when not equal
};

// Max componentwise difference over the grid, outputs paired by position.
// Requires identical input lists and equal output counts.
MapsEqualResult maps_equal(const Network& n1, const Network& n2, const Nonlinearity& rho,
                           const GridSpec& grid, double tol);

}  // namespace gfnn
