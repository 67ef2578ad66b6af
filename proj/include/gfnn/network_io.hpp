#pragma once
// On-disk interchange format: a versioned JSON document holding a basis of
// named constants, networks (with numeric or symbolic edge weights),
// nonlinearity definitions, and an optional experiment config. Emission is
// canonical (sorted keys, shortest round-tripping numbers), so parse(emit(x))
// is the identity on parsed documents and emit(parse(text)) is the identity
// on canonical text.

#include <map>
#include <optional>
#include <string>

#include "gfnn/eval.hpp"
#include "gfnn/network.hpp"
#include "gfnn/nonlinearity.hpp"
#include "gfnn/symbolic.hpp"

namespace gfnn {

struct NetworkEntry {
  Network net;
  // Exact coordinates for edges whose weights come from the basis; the
  // numeric weight in `net` always equals the symbolic value.
  std::map<EdgeKey, SymbolicReal> symbolic_weights;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  GridSpec grid;
  double tol = 1e-9;
};

struct NetworkFile {
  int version = 1;
  std::shared_ptr<const SymbolicBasis> basis;  // may be null
  std::map<std::string, Nonlinearity> nonlinearities;
  std::map<std::string, NetworkEntry> networks;
  std::optional<ExperimentConfig> experiment;
};

// Throws std::invalid_argument with position information on malformed JSON
// and with the entity name on semantic errors.
NetworkFile parse_network_file(const std::string& text);
std::string emit_network_file(const NetworkFile& file);

NetworkFile load_network_file(const std::string& path);
void save_network_file(const NetworkFile& file, const std::string& path);

// Shortest decimal that round-trips the double exactly.
std::string format_double(double x);

}  // namespace gfnn
