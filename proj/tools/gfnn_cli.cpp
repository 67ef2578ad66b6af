// Command-line front end: network validation, map evaluation, isomorphism
// checks, amalgamation, anchoring, series approximation, pole listings,
// linear-independence probes, identifiability experiments, rational-dimension
// analysis, input splitting, self-avoiding shift tooling, and built-in demos.
//
// Exit codes: 0 success, 1 analysis-negative (e.g. not isomorphic, invalid
// network under `validate`), 2 input error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfnn/amalgam.hpp"
#include "gfnn/anchor.hpp"
#include "gfnn/approx.hpp"
#include "gfnn/eval.hpp"
#include "gfnn/experiments.hpp"
#include "gfnn/isomorphism.hpp"
#include "gfnn/layered.hpp"
#include "gfnn/network_io.hpp"
#include "gfnn/random_network.hpp"
#include "gfnn/self_avoiding.hpp"
#include "gfnn/split.hpp"
#include "gfnn/symbolic.hpp"
#include "gfnn/winding.hpp"

using namespace gfnn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

NetworkFile load_input(const std::string& path) {
  if (path.empty()) throw InputError("missing --input file");
  return load_network_file(path);
}

const NetworkEntry& pick_network(const NetworkFile& file, const std::string& name) {
  auto it = file.networks.find(name);
  if (it == file.networks.end()) throw InputError("no network named '" + name + "' in the input");
  return it->second;
}

// A nonlinearity reference: either a builtin name ("tanh", "isru:2.0") or the
// name of a definition in the input file.
Nonlinearity resolve_nonlinearity(const NetworkFile* file, const std::string& ref) {
  std::string kind = ref;
  double a = 1.0;
  auto colon = ref.find(':');
  if (colon != std::string::npos) {
    kind = ref.substr(0, colon);
    a = std::stod(ref.substr(colon + 1));
  }
  if (auto b = builtin_kind_from_string(kind)) return Nonlinearity::builtin(*b, a);
  if (file) {
    auto it = file->nonlinearities.find(ref);
    if (it != file->nonlinearities.end()) return it->second;
  }
  throw InputError("unknown nonlinearity '" + ref + "'");
}

std::vector<double> parse_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

RealAssignment parse_assignment(const Network& net, const std::string& text) {
  RealAssignment x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("bad assignment entry '" + item + "'");
    x[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  if (x.size() != net.inputs.size()) throw InputError("assignment does not cover the inputs");
  return x;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

void emit_or_print(const std::string& output, const std::string& text) {
  if (output.empty())
    std::cout << text;
  else
    write_text(output, text);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Basis for qdim expressions: the constants actually named, drawn from a
// small table plus any --basis declarations.
std::shared_ptr<const SymbolicBasis> cli_basis(const std::string& values_text,
                                               const std::string& basis_text) {
  std::map<std::string, double> known = {{"one", 1.0},
                                         {"sqrt2", std::sqrt(2.0)},
                                         {"sqrt3", std::sqrt(3.0)},
                                         {"sqrt5", std::sqrt(5.0)},
                                         {"pi", M_PI},
                                         {"e", std::exp(1.0)}};
  if (!basis_text.empty()) {
    for (const auto& item : split_list(basis_text, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("bad basis entry '" + item + "'");
      known[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
  }
  std::vector<std::string> names = {"one"};
  std::vector<double> values = {1.0};
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    if (std::find(names.begin(), names.end(), token) == names.end()) {
      auto it = known.find(token);
      if (it == known.end()) throw InputError("unknown constant '" + token + "'");
      names.push_back(token);
      values.push_back(it->second);
    }
    token.clear();
  };
  for (char c : values_text) {
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
        (!token.empty() && std::isdigit(static_cast<unsigned char>(c))))
      token.push_back(c);
    else
      flush();
  }
  flush();
  return make_basis(std::move(names), std::move(values));
}

// --------------------------------------------------------------------------

int cmd_validate(const std::string& input, const std::vector<std::string>& names) {
  NetworkFile file = load_input(input);
  std::vector<std::string> targets = names;
  if (targets.empty())
    for (const auto& [name, entry] : file.networks) targets.push_back(name);
  bool all_valid = true;
  for (const auto& name : targets) {
    auto bad = validate(pick_network(file, name).net);
    if (bad.empty()) {
      std::cout << name << ": valid\n";
    } else {
      all_valid = false;
      std::cout << name << ": " << bad.size() << " violation(s)\n";
      for (const auto& v : bad) std::cout << "  - " << v << "\n";
    }
  }
  return all_valid ? kExitOk : kExitNegative;
}

int cmd_eval(const std::string& input, const std::string& network, const std::string& rho_ref,
             const std::string& at, const std::string& grid_text, const std::string& output) {
  NetworkFile file = load_input(input);
  const Network& net = pick_network(file, network).net;
  Nonlinearity rho = resolve_nonlinearity(&file, rho_ref);
  if (!at.empty()) {
    auto out = eval_real(net, rho, parse_assignment(net, at));
    std::string text;
    for (const auto& [w, v] : out) text += w + " = " + format_double(v) + "\n";
    emit_or_print(output, text);
    return kExitOk;
  }
  if (net.inputs.size() != 1)
    throw InputError("grid evaluation needs a single-input network; use --at");
  auto nums = parse_numbers(grid_text.empty() ? "-3:3:601" : grid_text, ':');
  if (nums.size() != 3) throw InputError("--grid must be lo:hi:count");
  std::string csv = "x";
  for (const auto& w : net.outputs) csv += "," + w;
  csv += "\n";
  int count = static_cast<int>(nums[2]);
  for (int i = 0; i < count; ++i) {
    double x = nums[0] + (nums[1] - nums[0]) * i / std::max(1, count - 1);
    csv += format_double(x);
    for (double y : eval_output_vector(net, rho, {x})) csv += "," + format_double(y);
    csv += "\n";
  }
  emit_or_print(output, csv);
  return kExitOk;
}

int cmd_iso(const std::string& input, const std::string& first, const std::string& second,
            const std::string& kind) {
  NetworkFile file = load_input(input);
  const Network& a = pick_network(file, first).net;
  const Network& b = pick_network(file, second).net;
  std::optional<IsoWitness> w;
  if (kind == "extensional") {
    w = extensionally_isomorphic(a, b);
  } else if (kind == "faithful") {
    w = faithfully_isomorphic(a, b);
  } else if (kind == "layered") {
    w = layered_isomorphic(to_layered(a), to_layered(b));
  } else if (kind == "sign-change") {
    w = sign_change_isomorphic(to_layered(a), to_layered(b));
  } else {
    throw InputError("unknown relation '" + kind + "'");
  }
  if (!w) {
    std::cout << "not " << kind << "-isomorphic\n";
    return kExitNegative;
  }
  std::cout << kind << "-isomorphic\n";
  for (const auto& [v, u] : w->node_map) std::cout << "  " << v << " -> " << u << "\n";
  for (std::size_t l = 0; l < w->level_perms.size(); ++l) {
    std::cout << "  level " << l << " perm:";
    for (int j : w->level_perms[l]) std::cout << " " << j;
    if (!w->signs.empty()) {
      std::cout << "  signs:";
      for (int s : w->signs[l]) std::cout << " " << (s > 0 ? "+" : "-");
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_amalgam(const std::string& input, const std::string& first, const std::string& second,
                const std::string& output) {
  NetworkFile file = load_input(input);
  auto res = amalgamate(pick_network(file, first).net, pick_network(file, second).net);
  std::cout << "amalgam: " << res.amalgam.node_count() << " nodes, " << res.amalgam.edges.size()
            << " edges\n";
  for (int side = 0; side < 2; ++side) {
    std::cout << "embedding of " << (side == 0 ? first : second) << ":\n";
    for (const auto& [v, img] : res.embeddings[side])
      std::cout << "  " << v << " -> " << img << "\n";
  }
  if (!output.empty()) {
    NetworkFile out;
    out.networks["amalgam"] = NetworkEntry{res.amalgam, {}};
    save_network_file(out, output);
  }
  return kExitOk;
}

int cmd_anchor(const std::string& input, const std::string& network, const std::string& node,
               double value, const std::string& rho_ref, const std::string& output) {
  NetworkFile file = load_input(input);
  const Network& net = pick_network(file, network).net;
  auto res = anchor_input(net, node, value, resolve_nonlinearity(&file, rho_ref));
  std::cout << "anchored network: " << res.anchored.node_count() << " nodes (was "
            << net.node_count() << ")\n";
  for (const auto& [w, v] : res.dropped_output_values)
    std::cout << "dropped output " << w << " = " << format_double(v) << "\n";
  for (const auto& [v, change] : res.modified_biases)
    std::cout << "bias " << v << ": " << format_double(change.first) << " -> "
              << format_double(change.second) << "\n";
  if (!output.empty()) {
    NetworkFile out;
    out.networks["anchored"] = NetworkEntry{res.anchored, {}};
    save_network_file(out, output);
  }
  return kExitOk;
}

int cmd_approx(const std::string& target_ref, double epsilon, const std::string& window_text,
               const std::string& output, const std::string& csv_path) {
  auto nums = parse_numbers(window_text.empty() ? "-20:20" : window_text, ':');
  if (nums.size() != 2) throw InputError("--window must be lo:hi");
  std::string kind = target_ref;
  double a = 1.0;
  auto colon = target_ref.find(':');
  if (colon != std::string::npos) {
    kind = target_ref.substr(0, colon);
    a = std::stod(target_ref.substr(colon + 1));
  }
  auto b = builtin_kind_from_string(kind);
  if (!b) throw InputError("unknown target '" + target_ref + "'");
  TargetFunctionSpec target = target_from_builtin(*b, a);
  auto res = approximate(target, epsilon, nums[0], nums[1]);
  const auto& r = res.report;
  std::cout << "alpha = " << format_double(r.alpha) << ", beta = " << format_double(r.beta)
            << ", terms = " << r.term_count << "\n";
  std::cout << "budgets: smoothing " << format_double(r.budget_smoothing) << ", riemann "
            << format_double(r.budget_riemann) << ", perturbation "
            << format_double(r.budget_perturb) << " (each < " << format_double(epsilon / 3)
            << ")\n";
  std::cout << "measured sup error on [" << format_double(r.window_lo) << ", "
            << format_double(r.window_hi) << "]: " << format_double(r.measured_sup_error)
            << (r.measured_sup_error < epsilon ? "  < " : "  >= ") << format_double(epsilon)
            << "\n";
  if (!output.empty()) {
    NetworkFile out;
    out.nonlinearities.emplace("sigma", Nonlinearity::series(res.series));
    save_network_file(out, output);
  }
  if (!csv_path.empty()) {
    std::string csv = "x,target,sigma,diff\n";
    for (int i = 0; i < r.grid_points; ++i) {
      double x = r.window_lo + (r.window_hi - r.window_lo) * i / (r.grid_points - 1);
      double t = target.value(x), s = sigma_eval(res.series, x);
      csv += format_double(x) + "," + format_double(t) + "," + format_double(s) + "," +
             format_double(s - t) + "\n";
    }
    write_text(csv_path, csv);
  }
  return r.measured_sup_error < epsilon ? kExitOk : kExitNegative;
}

int cmd_poles(const std::string& input, const std::string& sigma_ref,
              const std::string& window_text, const std::string& output) {
  NetworkFile file = load_input(input);
  Nonlinearity sigma = resolve_nonlinearity(&file, sigma_ref);
  auto nums = parse_numbers(window_text.empty() ? "-5:5:-2:2" : window_text, ':');
  if (nums.size() != 4) throw InputError("--window must be re_lo:re_hi:im_lo:im_hi");
  auto list = poles(sigma.series_ref(), {nums[0], nums[1], nums[2], nums[3]});
  std::string csv = "re,im\n";
  for (const auto& p : list) csv += format_double(p.real()) + "," + format_double(p.imag()) + "\n";
  emit_or_print(output, csv);
  return kExitOk;
}

int cmd_litest(const std::string& input, const std::vector<std::string>& names,
               const std::string& sigma_ref, int samples, std::uint64_t seed, double tol) {
  NetworkFile file = load_input(input);
  std::vector<std::string> targets = names;
  if (targets.empty())
    for (const auto& [name, entry] : file.networks) targets.push_back(name);
  std::vector<Network> nets;
  for (const auto& name : targets) nets.push_back(pick_network(file, name).net);
  auto rep = li_test(nets, resolve_nonlinearity(&file, sigma_ref), samples, seed, tol);
  std::cout << "min singular value = " << format_double(rep.min_singular) << " (threshold "
            << format_double(rep.threshold) << ", " << rep.samples << " samples)\n";
  if (rep.dependency) {
    std::cout << "candidate dependency: lambda_0 = " << format_double((*rep.dependency)[0]);
    for (std::size_t j = 1; j < rep.dependency->size(); ++j)
      std::cout << ", lambda[" << targets[j - 1]
                << "] = " << format_double((*rep.dependency)[j]);
    std::cout << "\n";
    return kExitNegative;  // dependent family
  }
  return kExitOk;
}

int cmd_identify(const std::string& input, const std::string& sigma_ref, const std::string& arm,
                 int trials, std::uint64_t seed, const std::string& output) {
  NetworkFile file;
  const NetworkFile* fptr = nullptr;
  if (!input.empty()) {
    file = load_input(input);
    fptr = &file;
  }
  TrialArm which;
  if (arm == "permuted")
    which = TrialArm::permuted_copy;
  else if (arm == "fresh")
    which = TrialArm::fresh_pair;
  else if (arm == "control")
    which = TrialArm::clipped_relu_zero;
  else
    throw InputError("unknown arm '" + arm + "' (permuted | fresh | control)");
  IdentifiabilityConfig cfg;
  if (fptr && fptr->experiment) cfg.grid = fptr->experiment->grid;
  Nonlinearity sigma = resolve_nonlinearity(fptr, sigma_ref);
  auto rep = identifiability_experiment(cfg, sigma, which, trials, seed);
  std::cout << rep.canonical_text();
  std::cout << "wall seconds: " << format_double(rep.wall_seconds) << "\n";
  if (!output.empty()) write_text(output, rep.canonical_text());
  int falsified = 0;
  for (const auto& r : rep.records)
    if (r.contradiction && !r.fixture.empty()) {
      std::string path = "contradiction-" + std::to_string(r.index) + ".json";
      write_text(path, r.fixture);
      std::cout << "contradiction fixture written to " << path << "\n";
      ++falsified;
    }
  return falsified == 0 ? kExitOk : kExitNegative;
}

int cmd_qdim(const std::string& values_text, const std::string& basis_text, bool decompose) {
  auto basis = cli_basis(values_text, basis_text);
  std::vector<SymbolicReal> values;
  for (const auto& item : split_list(values_text, ','))
    values.push_back(parse_symbolic(item, basis));
  if (!decompose) {
    std::cout << q_dimension(values) << "\n";
    return kExitOk;
  }
  auto d = q_decompose(values);
  std::cout << "k = " << d.k << "\norder:";
  for (int i : d.order) std::cout << " " << i;
  std::cout << "\nQ:\n";
  for (const auto& row : d.Q) {
    for (const auto& q : row) std::cout << "  " << rational_to_string(q);
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_split(const std::string& input, const std::string& network, const std::string& sigma_ref,
              const std::string& output) {
  NetworkFile file = load_input(input);
  const NetworkEntry& entry = pick_network(file, network);
  Nonlinearity sigma = resolve_nonlinearity(&file, sigma_ref);
  auto first = first_layer_weights(entry.net);
  std::vector<SymbolicReal> values;
  for (const auto& [node, w] : first) {
    auto it = entry.symbolic_weights.find({entry.net.inputs.front(), node});
    if (it == entry.symbolic_weights.end())
      throw InputError("first-layer edge to '" + node +
                       "' needs a symbolic weight for exact splitting");
    values.push_back(it->second);
  }
  auto d = q_decompose(values);
  std::cout << "rational dimension k = " << d.k << "\n";
  Network split = split_input(entry.net, d, sigma.series_ref());
  std::cout << "split network: inputs";
  for (const auto& u : split.inputs) std::cout << " " << u;
  std::cout << ", " << split.node_count() << " nodes\n";
  if (!output.empty()) {
    NetworkFile out;
    out.networks["split"] = NetworkEntry{split, {}};
    save_network_file(out, output);
  }
  return kExitOk;
}

int cmd_selfavoid(double beta, const std::string& range_text, const std::string& refute_text,
                  int height, const std::string& output) {
  if (!refute_text.empty()) {
    auto gaps = parse_numbers(refute_text, ',');
    auto rel = refute_rational_relation(gaps, height);
    if (rel) {
      std::cout << "relation found:";
      for (long long c : rel->coeffs) std::cout << " " << c;
      std::cout << "\n";
      return kExitNegative;
    }
    std::cout << "no integer relation up to height " << height << "\n";
    return kExitOk;
  }
  auto nums = parse_numbers(range_text.empty() ? "-10:10" : range_text, ':');
  if (nums.size() != 2) throw InputError("--range must be kmin:kmax");
  SelfAvoidingSpec spec;
  spec.beta = beta;
  spec.k_min = static_cast<int>(nums[0]);
  spec.k_max = static_cast<int>(nums[1]);
  auto shifts = generate_self_avoiding(spec);
  std::string csv = "k,shift\n";
  int k = spec.k_min;
  for (double s : shifts) csv += std::to_string(k++) + "," + format_double(s) + "\n";
  emit_or_print(output, csv);
  return kExitOk;
}

int cmd_demo(const std::string& which, std::uint64_t seed) {
  if (which == "clipped-relu-zero") {
    Network zero = append_clipped_relu_zero_block(random_clonesfree_network(seed, {1, 3, 1}));
    const Nonlinearity rho = Nonlinearity::builtin(BuiltinKind::clipped_relu);
    double worst = 0.0;
    for (int i = 0; i < 4001; ++i) {
      double x = -10.0 + 20.0 * i / 4000.0;
      worst = std::max(worst, std::abs(eval_output_vector(zero, rho, {x})[0]));
    }
    std::cout << "max |output| over 4001 points of [-10, 10]: " << format_double(worst) << "\n";
    return worst <= 1e-12 ? kExitOk : kExitNegative;
  }
  if (which == "multi-output") {
    Network base = random_clonesfree_network(seed, {1, 3, 4});
    for (auto& w : base.outputs) base.biases[w] = 0.0;
    const auto& o = base.outputs;
    Network n1 = ancestor_subnetwork(base, {o[0], o[2]});
    Network n2 = ancestor_subnetwork(base, {o[0], o[3]});
    Network n3 = ancestor_subnetwork(base, {o[1], o[3]});
    Network n4 = ancestor_subnetwork(base, {o[1], o[2]});
    const Nonlinearity rho = Nonlinearity::builtin(BuiltinKind::tanh);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double x = uni(rng);
      auto y1 = eval_output_vector(n1, rho, {x});
      auto y2 = eval_output_vector(n2, rho, {x});
      auto y3 = eval_output_vector(n3, rho, {x});
      auto y4 = eval_output_vector(n4, rho, {x});
      for (int c = 0; c < 2; ++c)
        worst = std::max(worst, std::abs(y1[c] - y2[c] + y3[c] - y4[c]));
    }
    std::cout << "max |N1 - N2 + N3 - N4| over 1000 random points: " << format_double(worst)
              << "\n";
    return worst <= 1e-9 ? kExitOk : kExitNegative;
  }
  if (which == "rational-dimension") {
    for (const std::string& tuple :
         {std::string("1,1.4"), std::string("1,sqrt2"), std::string("2/5,-4/5,3/2"),
          std::string("1,sqrt2,1/2+sqrt2")}) {
      auto basis = cli_basis(tuple, "");
      std::vector<SymbolicReal> values;
      for (const auto& item : split_list(tuple, ','))
        values.push_back(parse_symbolic(item, basis));
      std::cout << "dim_Q(" << tuple << ") = " << q_dimension(values) << "\n";
    }
    return kExitOk;
  }
  throw InputError("unknown demo '" + which +
                   "' (clipped-relu-zero | multi-output | rational-dimension)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feed-forward network identifiability toolkit"};
  app.require_subcommand(1);

  std::string input, output, network, first, second, node, rho_ref = "tanh",
                                                           sigma_ref = "tanh",
                                                           kind = "extensional", at, grid_text,
                                                           window_text, values_text, basis_text,
                                                           range_text, refute_text, target_ref,
                                                           arm = "permuted", demo_which, csv_path;
  std::vector<std::string> names;
  double value = 0.0, epsilon = 0.1, tol = 1e-8, beta = 0.5;
  int trials = 100, samples = 200, height = 20;
  std::uint64_t seed = 1;
  bool decompose = false;

  auto* c_validate = app.add_subcommand("validate", "structural checks on stored networks");
  c_validate->add_option("--input", input)->required();
  c_validate->add_option("names", names);

  auto* c_eval = app.add_subcommand("eval", "evaluate a realized map");
  c_eval->add_option("--input", input)->required();
  c_eval->add_option("--network", network)->required();
  c_eval->add_option("--rho", rho_ref);
  c_eval->add_option("--at", at);
  c_eval->add_option("--grid", grid_text);
  c_eval->add_option("--output", output);

  auto* c_iso = app.add_subcommand("iso", "isomorphism check between two stored networks");
  c_iso->add_option("--input", input)->required();
  c_iso->add_option("--first", first)->required();
  c_iso->add_option("--second", second)->required();
  c_iso->add_option("--kind", kind);

  auto* c_amalgam = app.add_subcommand("amalgam", "amalgamate two stored networks");
  c_amalgam->add_option("--input", input)->required();
  c_amalgam->add_option("--first", first)->required();
  c_amalgam->add_option("--second", second)->required();
  c_amalgam->add_option("--output", output);

  auto* c_anchor = app.add_subcommand("anchor", "anchor one input to a constant");
  c_anchor->add_option("--input", input)->required();
  c_anchor->add_option("--network", network)->required();
  c_anchor->add_option("--node", node)->required();
  c_anchor->add_option("--value", value)->required();
  c_anchor->add_option("--rho", rho_ref);
  c_anchor->add_option("--output", output);

  auto* c_approx = app.add_subcommand("approx", "tanh-series approximation of a builtin target");
  c_approx->add_option("--target", target_ref)->required();
  c_approx->add_option("--epsilon", epsilon)->required();
  c_approx->add_option("--window", window_text);
  c_approx->add_option("--output", output);
  c_approx->add_option("--csv", csv_path);

  auto* c_poles = app.add_subcommand("poles", "list series poles inside a window");
  c_poles->add_option("--input", input)->required();
  c_poles->add_option("--sigma", sigma_ref)->required();
  c_poles->add_option("--window", window_text);
  c_poles->add_option("--output", output);

  auto* c_litest = app.add_subcommand("litest", "linear-independence probe of stored maps");
  c_litest->add_option("--input", input)->required();
  c_litest->add_option("--sigma", sigma_ref);
  c_litest->add_option("--samples", samples);
  c_litest->add_option("--seed", seed);
  c_litest->add_option("--tol", tol);
  c_litest->add_option("names", names);

  auto* c_identify = app.add_subcommand("identify", "randomized identifiability trials");
  c_identify->add_option("--input", input);
  c_identify->add_option("--sigma", sigma_ref);
  c_identify->add_option("--arm", arm);
  c_identify->add_option("--trials", trials);
  c_identify->add_option("--seed", seed);
  c_identify->add_option("--output", output);

  auto* c_qdim = app.add_subcommand("qdim", "rational dimension of a value tuple");
  c_qdim->add_option("--values", values_text)->required();
  c_qdim->add_option("--basis", basis_text);
  c_qdim->add_flag("--decompose", decompose);

  auto* c_split = app.add_subcommand("split", "input splitting by rational structure");
  c_split->add_option("--input", input)->required();
  c_split->add_option("--network", network)->required();
  c_split->add_option("--sigma", sigma_ref)->required();
  c_split->add_option("--output", output);

  auto* c_selfavoid = app.add_subcommand("selfavoid", "self-avoiding shift tooling");
  c_selfavoid->add_option("--beta", beta);
  c_selfavoid->add_option("--range", range_text);
  c_selfavoid->add_option("--refute", refute_text);
  c_selfavoid->add_option("--height", height);
  c_selfavoid->add_option("--output", output);

  auto* c_demo = app.add_subcommand("demo", "built-in demonstrations");
  c_demo->add_option("which", demo_which)->required();
  c_demo->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_validate->parsed()) return cmd_validate(input, names);
    if (c_eval->parsed()) return cmd_eval(input, network, rho_ref, at, grid_text, output);
    if (c_iso->parsed()) return cmd_iso(input, first, second, kind);
    if (c_amalgam->parsed()) return cmd_amalgam(input, first, second, output);
    if (c_anchor->parsed()) return cmd_anchor(input, network, node, value, rho_ref, output);
    if (c_approx->parsed()) return cmd_approx(target_ref, epsilon, window_text, output, csv_path);
    if (c_poles->parsed()) return cmd_poles(input, sigma_ref, window_text, output);
    if (c_litest->parsed()) return cmd_litest(input, names, sigma_ref, samples, seed, tol);
    if (c_identify->parsed()) return cmd_identify(input, sigma_ref, arm, trials, seed, output);
    if (c_qdim->parsed()) return cmd_qdim(values_text, basis_text, decompose);
    if (c_split->parsed()) return cmd_split(input, network, sigma_ref, output);
    if (c_selfavoid->parsed())
      return cmd_selfavoid(beta, range_text, refute_text, height, output);
    if (c_demo->parsed()) return cmd_demo(demo_which, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
