#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "gfnn/amalgam.hpp"
#include "gfnn/anchor.hpp"
#include "gfnn/isomorphism.hpp"
#include "gfnn/random_network.hpp"

using namespace gfnn;
using namespace gfnn::testing;

namespace {

// Max over sample points of |node map of v in `a`| vs its image in `b`.
double max_embedded_node_diff(const Network& a, const Network& b,
                              const std::map<NodeId, NodeId>& embed, const Nonlinearity& rho,
                              const std::vector<std::vector<double>>& pts) {
  double worst = 0.0;
  for (const auto& p : pts) {
    RealAssignment x;
    for (std::size_t i = 0; i < a.inputs.size(); ++i) x[a.inputs[i]] = p[i];
    auto va = eval_all_nodes(a, rho, x);
    auto vb = eval_all_nodes(b, rho, x);
    for (const auto& [v, img] : embed)
      worst = std::max(worst, std::abs(va.at(v) - vb.at(img)));
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("compose");

TEST_CASE("amalgamating a network with itself collapses back to it") {
  Network n = random_clonesfree_network(201, {1, 3, 1});
  auto res = amalgamate(n, n);
  CHECK(find_clone_pairs(res.amalgam).empty());
  CHECK(is_non_degenerate(res.amalgam));
  CHECK(res.embeddings[0] == res.embeddings[1]);
  CHECK(extensionally_isomorphic(n, res.amalgam).has_value());
}

TEST_CASE("shared first-layer node is merged and its edge grafted") {
  // Two 2-layer networks agreeing on one first-layer node.
  Network a, b;
  a.inputs = b.inputs = {"x"};
  a.biases = {{"c", 0.5}, {"d", -0.5}, {"oa", 0.1}};
  a.edges = {{{"x", "c"}, 1.0}, {{"x", "d"}, 2.0}, {{"c", "oa"}, 1.0}, {{"d", "oa"}, 1.0}};
  a.outputs = {"oa"};
  b.biases = {{"c2", 0.5}, {"ob", 0.2}};
  b.edges = {{{"x", "c2"}, 1.0}, {{"c2", "ob"}, 3.0}};
  b.outputs = {"ob"};
  REQUIRE(validate(a).empty());
  REQUIRE(validate(b).empty());

  auto res = amalgamate(a, b);
  // c and c2 are clones across the two sides; exactly one copy survives.
  CHECK(res.amalgam.node_count() == 5);  // x, merged c, d, oa, ob
  CHECK(res.embeddings[0].at("c") == res.embeddings[1].at("c2"));
  CHECK(find_clone_pairs(res.amalgam).empty());
  CHECK(is_non_degenerate(res.amalgam));

  auto pts = random_points(1, 100, 91);
  for (const auto& rho : all_builtin_nonlinearities()) {
    CHECK(max_embedded_node_diff(a, res.amalgam, res.embeddings[0], rho, pts) <= 1e-12);
    CHECK(max_embedded_node_diff(b, res.amalgam, res.embeddings[1], rho, pts) <= 1e-12);
  }
}

TEST_CASE("embeddings land on ancestor subnetworks extensionally") {
  Network a = random_clonesfree_network(202, {1, 2, 1});
  Network b = random_clonesfree_network(203, {1, 3, 1});
  auto res = amalgamate(a, b);
  for (int side = 0; side < 2; ++side) {
    const Network& arg = side == 0 ? a : b;
    std::vector<NodeId> image_outputs;
    for (const auto& w : arg.outputs) image_outputs.push_back(res.embeddings[side].at(w));
    Network sub = ancestor_subnetwork(res.amalgam, image_outputs);
    CHECK(verify_extensional(arg, sub, res.embeddings[side]));
  }
  // Node set is the union of the embedding images; outputs the union of the
  // embedded outputs.
  std::set<NodeId> images, out_images;
  for (int side = 0; side < 2; ++side) {
    for (const auto& [v, img] : res.embeddings[side]) images.insert(img);
    for (const auto& w : (side == 0 ? a : b).outputs)
      out_images.insert(res.embeddings[side].at(w));
  }
  auto all = res.amalgam.all_nodes();
  CHECK(images == std::set<NodeId>(all.begin(), all.end()));
  CHECK(out_images ==
        std::set<NodeId>(res.amalgam.outputs.begin(), res.amalgam.outputs.end()));
}

TEST_CASE("argument order changes the amalgam only up to extensional isomorphism") {
  for (int t = 0; t < 10; ++t) {
    Network a = random_clonesfree_network(300 + t, {1, 2, 1});
    Network b = random_clonesfree_network(400 + t, {1, 2, 1});
    auto ab = amalgamate(a, b);
    auto ba = amalgamate(b, a);
    CHECK(extensionally_isomorphic(ab.amalgam, ba.amalgam).has_value());
  }
}

TEST_CASE("amalgamate_many: singleton, repeated copies, and three-way folds") {
  Network n = random_clonesfree_network(204, {1, 2, 1});
  auto single = amalgamate_many({n});
  CHECK(single.amalgam == n);
  for (const auto& [v, img] : single.embeddings[0]) CHECK(v == img);

  auto triple = amalgamate_many({n, n, n});
  CHECK(extensionally_isomorphic(n, triple.amalgam).has_value());

  std::vector<Network> three = {random_clonesfree_network(205, {1, 2, 1}),
                                random_clonesfree_network(206, {1, 3, 1}),
                                random_clonesfree_network(207, {1, 2, 2, 1})};
  auto fold = amalgamate_many(three);
  CHECK(find_clone_pairs(fold.amalgam).empty());
  CHECK(is_non_degenerate(fold.amalgam));
  auto pts = random_points(1, 100, 93);
  const Nonlinearity rho = Nonlinearity::builtin(BuiltinKind::tanh);
  for (std::size_t j = 0; j < three.size(); ++j)
    CHECK(max_embedded_node_diff(three[j], fold.amalgam, fold.embeddings[j], rho, pts) <= 1e-12);
}

TEST_CASE("amalgamate enforces its preconditions") {
  Network a = random_clonesfree_network(208, {1, 2, 1});
  Network different_inputs = random_clonesfree_network(209, {2, 2, 1});
  CHECK_THROWS_AS(amalgamate(a, different_inputs), std::invalid_argument);

  Network degenerate = a;
  degenerate.biases["spur"] = 0.1;
  degenerate.edges[{"x1", "spur"}] = 1.0;
  CHECK_THROWS_AS(amalgamate(degenerate, a), std::invalid_argument);

  CHECK_THROWS_AS(amalgamate(skip_level_with_middle_output(),
                             skip_level_with_middle_output()),
                  std::invalid_argument);
}

TEST_CASE("gluing composes the map with per-input ramps") {
  Network n = random_clonesfree_network(210, {2, 2, 1});
  std::map<NodeId, double> w = {{"x1", 1.0}, {"x2", 2.0}};
  auto glued = glue_single_input({n}, w);
  REQUIRE(glued.size() == 1);
  const Network& g = glued[0];
  CHECK(g.inputs == std::vector<NodeId>{"v_in"});
  CHECK(validate(g).empty());
  CHECK(is_layered(g));
  for (const auto& rho : all_builtin_nonlinearities()) {
    for (const auto& p : random_points(1, 60, 95)) {
      double t = p[0];
      auto via_glue = eval_output_vector(g, rho, {t});
      auto direct = eval_output_vector(n, rho, {rho(1.0 * t), rho(2.0 * t)});
      CHECK(std::abs(via_glue[0] - direct[0]) <= 1e-12);
    }
  }
}

TEST_CASE("gluing rejects duplicate or zero weights") {
  Network n = random_clonesfree_network(211, {2, 2, 1});
  CHECK_THROWS_AS(glue_single_input({n}, {{"x1", 1.0}, {"x2", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(glue_single_input({n}, {{"x1", 0.0}, {"x2", 1.0}}), std::invalid_argument);
}

TEST_CASE("gluing preserves clones-freeness on random fixtures") {
  for (int t = 0; t < 20; ++t) {
    Network n = random_clonesfree_network(500 + t, {2, 3, 1});
    auto glued = glue_single_input({n}, {{"x1", 1.0}, {"x2", 2.0}});
    CHECK(find_clone_pairs(glued[0]).empty());
  }
}

TEST_CASE("anchoring: one-step bias fold") {
  Network n;
  n.inputs = {"u1", "u2"};
  n.biases = {{"v", 0.5}};
  n.edges = {{{"u1", "v"}, 1.0}, {{"u2", "v"}, 2.0}};
  n.outputs = {"v"};
  auto res = anchor_input(n, "u2", 1.0, Nonlinearity::builtin(BuiltinKind::tanh));
  CHECK(res.anchored.inputs == std::vector<NodeId>{"u1"});
  CHECK(res.anchored.biases.at("v") == 2.5);
  REQUIRE(res.modified_biases.count("v") == 1);
  CHECK(res.modified_biases.at("v") == std::pair<double, double>{0.5, 2.5});
  CHECK(res.dropped_output_values.empty());
}

TEST_CASE("anchoring: two-step removed chain folds recursively") {
  const Nonlinearity rho = Nonlinearity::builtin(BuiltinKind::tanh);
  Network n;
  n.inputs = {"u1", "u2"};
  n.biases = {{"p", 0.25}, {"v", -0.5}};
  n.edges = {{{"u2", "p"}, 3.0}, {{"p", "v"}, 0.5}, {{"u1", "v"}, 1.0}};
  n.outputs = {"v"};
  double a = 0.8;
  auto res = anchor_input(n, "u2", a, rho);
  double expect = -0.5 + 0.5 * rho(3.0 * a + 0.25);
  CHECK(res.anchored.biases.at("v") == doctest::Approx(expect).epsilon(1e-15));
  CHECK(res.anchored.node_count() == 2);
}

TEST_CASE("anchoring: output depending only on the anchored input is dropped") {
  const Nonlinearity rho = Nonlinearity::builtin(BuiltinKind::logistic);
  Network n;
  n.inputs = {"u1", "u2"};
  n.biases = {{"w1", 0.0}, {"w2", 0.3}};
  n.edges = {{{"u1", "w1"}, 1.0}, {{"u2", "w2"}, -2.0}};
  n.outputs = {"w1", "w2"};
  auto res = anchor_input(n, "u2", 0.4, rho);
  CHECK(res.anchored.outputs == std::vector<NodeId>{"w1"});
  REQUIRE(res.dropped_output_values.count("w2") == 1);
  CHECK(res.dropped_output_values.at("w2") ==
        doctest::Approx(rho(-2.0 * 0.4 + 0.3)).epsilon(1e-15));
}

TEST_CASE("anchoring satisfies the retained-output and constancy properties") {
  const Nonlinearity rho = Nonlinearity::builtin(BuiltinKind::tanh);
  for (int t = 0; t < 50; ++t) {
    Network n = random_clonesfree_network(600 + t, {2, 3, 2});
    // Hang an extra output off the second input only, so drops occur.
    n.biases["solo"] = 0.7;
    n.edges[{"x2", "solo"}] = 1.3;
    n.outputs.push_back("solo");
    REQUIRE(validate(n).empty());
    REQUIRE(is_non_degenerate(n));

    double a = -0.6 + 0.05 * t;
    auto res = anchor_input(n, "x2", a, rho);
    CHECK(res.anchored.node_count() < n.node_count());
    CHECK(validate(res.anchored).empty());
    CHECK(is_non_degenerate(res.anchored));
    CHECK(is_layered(res.anchored) == is_layered(n));

    // Retained outputs match the original map with the anchor inserted.
    for (const auto& p : random_points(1, 40, 700 + t)) {
      auto va = eval_all_nodes(res.anchored, rho, {{"x1", p[0]}});
      auto vo = eval_all_nodes(n, rho, {{"x1", p[0]}, {"x2", a}});
      for (const auto& w : res.anchored.outputs)
        CHECK(std::abs(va.at(w) - vo.at(w)) <= 1e-12);
      for (const auto& [w, value] : res.dropped_output_values)
        CHECK(std::abs(vo.at(w) - value) <= 1e-12);
    }
  }
}

TEST_CASE("anchoring preconditions") {
  Network single = random_clonesfree_network(212, {1, 2, 1});
  CHECK_THROWS_AS(anchor_input(single, "x1", 0.0, Nonlinearity::builtin(BuiltinKind::tanh)),
                  std::invalid_argument);
  Network two = random_clonesfree_network(213, {2, 2, 1});
  CHECK_THROWS_AS(anchor_input(two, "nope", 0.0, Nonlinearity::builtin(BuiltinKind::tanh)),
                  std::invalid_argument);
}

TEST_CASE("clone-free anchor search skips collapsing values") {
  // Anchoring u2 at 0 makes c1 and c2 clones; at 1 it does not.
  Network n;
  n.inputs = {"u1", "u2"};
  n.biases = {{"c1", 0.0}, {"c2", 0.0}, {"w", 0.1}};
  n.edges = {{{"u1", "c1"}, 1.0}, {{"u2", "c1"}, 1.0},
             {{"u1", "c2"}, 1.0}, {{"u2", "c2"}, 2.0},
             {{"c1", "w"}, 1.0},  {{"c2", "w"}, -1.0}};
  n.outputs = {"w"};
  REQUIRE(validate(n).empty());
  REQUIRE(find_clone_pairs(n).empty());
  const Nonlinearity rho = Nonlinearity::builtin(BuiltinKind::tanh);

  auto bad = anchor_input(n, "u2", 0.0, rho);
  CHECK_FALSE(find_clone_pairs(bad.anchored).empty());

  auto found = find_clone_free_anchor(n, "u2", rho, default_anchor_candidates());
  REQUIRE(found.has_value());
  CHECK(found->a == 1.0);
  CHECK(find_clone_pairs(found->result.anchored).empty());

  CHECK_FALSE(find_clone_free_anchor(n, "u2", rho, {0.0}).has_value());

  Network plain = random_clonesfree_network(214, {2, 2, 1});
  auto easy = find_clone_free_anchor(plain, "x1", rho, default_anchor_candidates());
  REQUIRE(easy.has_value());
  CHECK(easy->a == 0.0);
}

TEST_SUITE_END();
