#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gfnn/network_io.hpp"

using namespace gfnn;
using namespace gfnn::testing;

TEST_SUITE_BEGIN("io");

namespace {

NetworkFile sample_file() {
  NetworkFile f;
  f.basis = make_basis({"one", "sqrt2"}, {1.0, std::sqrt(2.0)});
  f.nonlinearities.emplace("rho", Nonlinearity::builtin(BuiltinKind::softsign));
  f.nonlinearities.emplace("rho_isru", Nonlinearity::builtin(BuiltinKind::isru, 2.0));
  f.nonlinearities.emplace("sigma", Nonlinearity::series(self_avoiding_series()));
  NetworkEntry e;
  e.net = small_chain();
  EdgeKey key{"x", "a"};
  e.symbolic_weights.emplace(key, parse_symbolic("1/2+sqrt2", f.basis));
  e.net.edges[key] = e.symbolic_weights.at(key).numeric();
  f.networks.emplace("chain", std::move(e));
  ExperimentConfig cfg;
  cfg.seed = 42;
  cfg.trials = 10;
  cfg.tol = 1e-8;
  f.experiment = cfg;
  return f;
}

}  // namespace

TEST_CASE("emit then parse reproduces the document") {
  NetworkFile f = sample_file();
  std::string text = emit_network_file(f);
  NetworkFile g = parse_network_file(text);

  CHECK(g.version == 1);
  REQUIRE(g.basis);
  CHECK(g.basis->names == f.basis->names);
  CHECK(g.basis->values == f.basis->values);
  CHECK(g.nonlinearities.at("rho") == f.nonlinearities.at("rho"));
  CHECK(g.nonlinearities.at("rho_isru") == f.nonlinearities.at("rho_isru"));
  CHECK(g.nonlinearities.at("sigma") == f.nonlinearities.at("sigma"));
  CHECK(g.networks.at("chain").net == f.networks.at("chain").net);
  CHECK(g.networks.at("chain").symbolic_weights.at({"x", "a"}).coeffs ==
        f.networks.at("chain").symbolic_weights.at({"x", "a"}).coeffs);
  REQUIRE(g.experiment.has_value());
  CHECK(g.experiment->seed == 42);
  CHECK(g.experiment->trials == 10);
  CHECK(g.experiment->tol == 1e-8);

  // Canonical text is a fixed point of parse-then-emit.
  CHECK(emit_network_file(g) == text);
}

TEST_CASE("numbers round-trip at full precision") {
  NetworkFile f;
  NetworkEntry e;
  e.net.inputs = {"x"};
  e.net.outputs = {"v"};
  e.net.biases = {{"v", 0.1 + 0.2}};  // not exactly 0.3
  e.net.edges = {{{"x", "v"}, std::nextafter(1.0, 2.0)}};
  f.networks.emplace("n", std::move(e));
  NetworkFile g = parse_network_file(emit_network_file(f));
  CHECK(g.networks.at("n").net.biases.at("v") == 0.1 + 0.2);
  CHECK(g.networks.at("n").net.edges.at({"x", "v"}) == std::nextafter(1.0, 2.0));
}

TEST_CASE("format_double emits shortest round-trip decimals") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
  CHECK(std::stod(format_double(std::nextafter(2.0, 3.0))) == std::nextafter(2.0, 3.0));
}

TEST_CASE("parse errors carry position info; semantic errors name the entity") {
  CHECK_THROWS_WITH_AS(parse_network_file("{ not json"),
                       doctest::Contains("parse error"), std::invalid_argument);

  // Symbolic weight without a basis.
  std::string no_basis = R"({
    "version": 1,
    "networks": {"n": {"inputs": ["x"], "outputs": ["v"],
      "nodes": {"v": 0.0},
      "edges": [{"from": "x", "to": "v", "weight": "sqrt2"}]}}
  })";
  CHECK_THROWS_WITH_AS(parse_network_file(no_basis), doctest::Contains("'n'"),
                       std::invalid_argument);

  std::string bad_kind = R"({
    "version": 1,
    "nonlinearities": {"r": {"type": "builtin", "kind": "mystery"}}
  })";
  CHECK_THROWS_WITH_AS(parse_network_file(bad_kind), doctest::Contains("'r'"),
                       std::invalid_argument);

  std::string bad_version = R"({"version": 99})";
  CHECK_THROWS_AS(parse_network_file(bad_version), std::invalid_argument);

  std::string dup_edge = R"({
    "version": 1,
    "networks": {"n": {"inputs": ["x"], "outputs": ["v"],
      "nodes": {"v": 0.0},
      "edges": [{"from": "x", "to": "v", "weight": 1.0},
                {"from": "x", "to": "v", "weight": 2.0}]}}
  })";
  CHECK_THROWS_WITH_AS(parse_network_file(dup_edge), doctest::Contains("duplicate edge"),
                       std::invalid_argument);
}

TEST_CASE("structurally invalid networks still load; validate reports them") {
  // The format carries what was written; structural checking is a separate
  // operation so a validator front-end can inspect bad inputs.
  std::string text = R"({
    "version": 1,
    "networks": {"broken": {"inputs": ["x"], "outputs": ["v"],
      "nodes": {"v": 0.0},
      "edges": [{"from": "x", "to": "v", "weight": 0.0}]}}
  })";
  NetworkFile f = parse_network_file(text);
  CHECK_FALSE(validate(f.networks.at("broken").net).empty());
}

TEST_SUITE_END();
