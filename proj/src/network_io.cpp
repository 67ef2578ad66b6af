#include "gfnn/network_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gfnn {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

std::string symbolic_to_string(const SymbolicReal& v) {
  std::string out;
  for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
    if (v.coeffs[i] == 0) continue;
    std::string term = rational_to_string(v.coeffs[i]) + "*" + v.basis->names[i];
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += term;
    else
      out += "+" + term;
  }
  return out.empty() ? "0" : out;
}

json emit_nonlinearity(const Nonlinearity& nl) {
  json j;
  if (const auto* b = std::get_if<Builtin>(&nl.impl)) {
    j["type"] = "builtin";
    j["kind"] = to_string(b->kind);
    if (builtin_uses_parameter(b->kind)) j["a"] = b->a;
  } else {
    const auto& s = std::get<TanhSeries>(nl.impl);
    j["type"] = "series";
    j["C"] = s.offset;
    j["alpha"] = s.alpha;
    j["tail_bound"] = s.tail_bound;
    json terms = json::array();
    for (const auto& t : s.terms) terms.push_back({{"coeff", t.coeff}, {"shift", t.shift}});
    j["terms"] = std::move(terms);
  }
  return j;
}

Nonlinearity parse_nonlinearity(const std::string& name, const json& j) {
  if (!j.is_object() || !j.contains("type"))
    fail("nonlinearity '" + name + "': expected an object with a type");
  std::string type = j.at("type").get<std::string>();
  if (type == "builtin") {
    auto kind = builtin_kind_from_string(j.at("kind").get<std::string>());
    if (!kind)
      fail("nonlinearity '" + name + "': unknown builtin kind '" +
           j.at("kind").get<std::string>() + "'");
    double a = j.value("a", 1.0);
    return Nonlinearity::builtin(*kind, a);
  }
  if (type == "series") {
    TanhSeries s;
    s.offset = j.value("C", 0.0);
    s.alpha = j.value("alpha", 1.0);
    s.tail_bound = j.value("tail_bound", 0.0);
    for (const auto& t : j.value("terms", json::array()))
      s.terms.push_back({t.at("shift").get<double>(), t.at("coeff").get<double>()});
    auto bad = validate_series(s);
    if (!bad.empty()) fail("nonlinearity '" + name + "': " + bad.front());
    return Nonlinearity::series(std::move(s));
  }
  fail("nonlinearity '" + name + "': unknown type '" + type + "'");
}

json emit_network(const NetworkEntry& entry) {
  const Network& n = entry.net;
  json j;
  j["inputs"] = n.inputs;
  j["outputs"] = n.outputs;
  json nodes = json::object();
  for (const auto& [v, theta] : n.biases) nodes[v] = theta;
  j["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& [key, w] : n.edges) {
    json e = {{"from", key.first}, {"to", key.second}};
    auto sym = entry.symbolic_weights.find(key);
    if (sym != entry.symbolic_weights.end())
      e["weight"] = symbolic_to_string(sym->second);
    else
      e["weight"] = w;
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);
  return j;
}

NetworkEntry parse_network(const std::string& name, const json& j,
                           const std::shared_ptr<const SymbolicBasis>& basis) {
  NetworkEntry entry;
  Network& n = entry.net;
  if (!j.is_object()) fail("network '" + name + "': expected an object");
  for (const auto& v : j.value("inputs", json::array())) n.inputs.push_back(v.get<std::string>());
  for (const auto& v : j.value("outputs", json::array()))
    n.outputs.push_back(v.get<std::string>());
  if (j.contains("nodes"))
    for (const auto& [v, theta] : j.at("nodes").items()) {
      if (!theta.is_number())
        fail("network '" + name + "': bias of '" + v + "' must be a number");
      n.biases[v] = theta.get<double>();
    }
  for (const auto& e : j.value("edges", json::array())) {
    EdgeKey key{e.at("from").get<std::string>(), e.at("to").get<std::string>()};
    if (n.edges.count(key))
      fail("network '" + name + "': duplicate edge (" + key.first + " -> " + key.second + ")");
    const json& w = e.at("weight");
    if (w.is_number()) {
      n.edges[key] = w.get<double>();
    } else if (w.is_string()) {
      if (!basis)
        fail("network '" + name + "': symbolic weight without a basis declaration");
      SymbolicReal sym = parse_symbolic(w.get<std::string>(), basis);
      n.edges[key] = sym.numeric();
      entry.symbolic_weights.emplace(key, std::move(sym));
    } else {
      fail("network '" + name + "': weight must be a number or a symbolic string");
    }
  }
  return entry;
}

json emit_grid(const GridSpec& g) {
  return json{{"hi", g.hi},
              {"lhs_cap", g.lhs_cap},
              {"lhs_seed", g.lhs_seed},
              {"lo", g.lo},
              {"per_dim", g.per_dim}};
}

GridSpec parse_grid(const json& j) {
  GridSpec g;
  g.lo = j.value("lo", g.lo);
  g.hi = j.value("hi", g.hi);
  g.per_dim = j.value("per_dim", g.per_dim);
  g.lhs_cap = j.value("lhs_cap", g.lhs_cap);
  g.lhs_seed = j.value("lhs_seed", g.lhs_seed);
  return g;
}

}  // namespace

NetworkFile parse_network_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) fail("document root must be an object");
  NetworkFile file;
  file.version = j.value("version", 1);
  if (file.version != 1) fail("unsupported version " + std::to_string(file.version));
  if (j.contains("basis")) {
    std::vector<std::string> names;
    std::vector<double> values;
    for (const auto& [name, value] : j.at("basis").items()) {
      names.push_back(name);
      if (!value.is_number()) fail("basis constant '" + name + "' must be a number");
      values.push_back(value.get<double>());
    }
    file.basis = make_basis(std::move(names), std::move(values));
  }
  if (j.contains("nonlinearities"))
    for (const auto& [name, body] : j.at("nonlinearities").items())
      file.nonlinearities.emplace(name, parse_nonlinearity(name, body));
  if (j.contains("networks"))
    for (const auto& [name, body] : j.at("networks").items())
      file.networks.emplace(name, parse_network(name, body, file.basis));
  if (j.contains("experiment")) {
    const json& e = j.at("experiment");
    ExperimentConfig cfg;
    cfg.seed = e.value("seed", cfg.seed);
    cfg.trials = e.value("trials", cfg.trials);
    cfg.tol = e.value("tol", cfg.tol);
    if (e.contains("grid")) cfg.grid = parse_grid(e.at("grid"));
    file.experiment = cfg;
  }
  return file;
}

std::string emit_network_file(const NetworkFile& file) {
  json j;
  j["version"] = file.version;
  if (file.basis) {
    json basis = json::object();
    for (std::size_t i = 0; i < file.basis->names.size(); ++i)
      basis[file.basis->names[i]] = file.basis->values[i];
    j["basis"] = std::move(basis);
  }
  if (!file.nonlinearities.empty()) {
    json nl = json::object();
    for (const auto& [name, body] : file.nonlinearities) nl[name] = emit_nonlinearity(body);
    j["nonlinearities"] = std::move(nl);
  }
  if (!file.networks.empty()) {
    json nets = json::object();
    for (const auto& [name, entry] : file.networks) nets[name] = emit_network(entry);
    j["networks"] = std::move(nets);
  }
  if (file.experiment) {
    const auto& cfg = *file.experiment;
    j["experiment"] = json{{"grid", emit_grid(cfg.grid)},
                           {"seed", cfg.seed},
                           {"tol", cfg.tol},
                           {"trials", cfg.trials}};
  }
  return j.dump(2) + "\n";
}

NetworkFile load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network_file(ss.str());
}

void save_network_file(const NetworkFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << emit_network_file(file);
}

}  // namespace gfnn
