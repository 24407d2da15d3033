#include "wcg/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wcg::io {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) fail(std::string("expected an object holding \"") + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

Rational rational(const json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + ": rationals must be \"num/den\" strings");
  return Rational::parse(j.get<std::string>());
}

std::uint64_t uint(const json& j, const char* what) {
  if (!j.is_number_unsigned()) fail(std::string(what) + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

bool boolean(const json& j, const char* what) {
  if (!j.is_boolean()) fail(std::string(what) + ": expected true or false");
  return j.get<bool>();
}

Strategy ids(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + ": expected an array of resource ids");
  std::vector<ResourceId> out;
  for (const auto& x : j) out.push_back(uint(x, what));
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

json strategies_json(const std::vector<Strategy>& ss) {
  json arr = json::array();
  for (const auto& s : ss) arr.push_back(s);
  return arr;
}

}  // namespace

std::string serialize_game(const Game& game) {
  json j;
  j["d"] = game.degree;
  j["W"] = game.declared_W.str();
  j["A"] = game.declared_A.str();
  json players = json::array();
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    json p;
    p["weight"] = game.weights[u].str();
    const auto& set = game.strategy_sets.at(u);
    if (const auto* ex = std::get_if<ExplicitStrategies>(&set)) {
      p["strategies"] = strategies_json(ex->strategies);
    } else {
      const auto& ps = std::get<PathStrategies>(set);
      p["strategies"] = json{{"od", {ps.origin, ps.destination}}};
    }
    players.push_back(std::move(p));
  }
  j["players"] = std::move(players);
  json resources = json::array();
  for (const auto& lat : game.latencies) {
    json coeffs = json::array();
    for (const auto& a : lat.coeffs) coeffs.push_back(a.str());
    resources.push_back(json{{"coeffs", std::move(coeffs)}});
  }
  j["resources"] = std::move(resources);
  if (game.graph) {
    json edges = json::array();
    for (const Arc& a : game.graph->arcs) edges.push_back({a.from, a.to, a.resource});
    j["graph"] = json{{"nodes", game.graph->nodes}, {"edges", std::move(edges)}};
  }
  return j.dump(2) + "\n";
}

Game parse_game(std::string_view text) {
  const json j = parse_json(text);
  Game g;
  const std::uint64_t d = uint(field(j, "d"), "d");
  if (d > 64) fail("d too large");
  g.degree = static_cast<unsigned>(d);
  g.declared_W = rational(field(j, "W"), "W");
  g.declared_A = rational(field(j, "A"), "A");
  const json& players = field(j, "players");
  if (!players.is_array()) fail("players: expected an array");
  for (const auto& p : players) {
    g.weights.push_back(rational(field(p, "weight"), "weight"));
    const json& s = field(p, "strategies");
    if (s.is_array()) {
      ExplicitStrategies ex;
      for (const auto& st : s) ex.strategies.push_back(ids(st, "strategy"));
      g.strategy_sets.emplace_back(std::move(ex));
    } else if (s.is_object()) {
      const json& od = field(s, "od");
      if (!od.is_array() || od.size() != 2) fail("od: expected [origin, destination]");
      g.strategy_sets.emplace_back(PathStrategies{uint(od[0], "od"), uint(od[1], "od")});
    } else {
      fail("strategies: expected an array of arrays or {\"od\": [s, t]}");
    }
  }
  const json& resources = field(j, "resources");
  if (!resources.is_array()) fail("resources: expected an array");
  for (const auto& r : resources) {
    const json& coeffs = field(r, "coeffs");
    if (!coeffs.is_array()) fail("coeffs: expected an array");
    LatencyPoly lat;
    for (const auto& a : coeffs) lat.coeffs.push_back(rational(a, "coefficient"));
    g.latencies.push_back(std::move(lat));
  }
  if (auto it = j.find("graph"); it != j.end()) {
    Graph graph;
    graph.nodes = uint(field(*it, "nodes"), "nodes");
    const json& edges = field(*it, "edges");
    if (!edges.is_array()) fail("edges: expected an array");
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 3) fail("edge: expected [from, to, resource]");
      graph.arcs.push_back({uint(e[0], "edge"), uint(e[1], "edge"), uint(e[2], "edge")});
    }
    g.graph = std::move(graph);
  }
  return g;
}

std::string serialize_profile(const Profile& profile) {
  json j;
  j["strategies"] = strategies_json(profile.strategies);
  return j.dump(2) + "\n";
}

Profile parse_profile(std::string_view text) {
  const json j = parse_json(text);
  const json& s = field(j, "strategies");
  if (!s.is_array()) fail("strategies: expected an array");
  Profile p;
  for (const auto& st : s) p.strategies.push_back(make_strategy(ids(st, "strategy")));
  return p;
}

std::string serialize_spec(const GenSpec& s) {
  json j;
  j["seed"] = s.seed;
  j["N"] = s.N;
  j["E"] = s.E;
  j["d"] = s.d;
  j["W"] = s.W.str();
  j["A"] = s.A.str();
  j["symmetric"] = s.symmetric;
  j["strategies_per_player"] = s.strategies_per_player;
  j["strategy_size"] = {s.strategy_size_min, s.strategy_size_max};
  j["coefficient_base"] = s.coefficient_base.str();
  if (s.network) {
    const auto& n = *s.network;
    j["network"] = json{{"nodes", n.nodes},
                        {"edge_probability", {n.edge_num, n.edge_den}},
                        {"max_parallel", n.max_parallel},
                        {"od_policy", n.od_policy == OdPolicy::Common ? "common" : "random"},
                        {"max_retries", n.max_retries}};
  }
  return j.dump(2) + "\n";
}

GenSpec parse_spec(std::string_view text) {
  const json j = parse_json(text);
  GenSpec s;
  s.seed = uint(field(j, "seed"), "seed");
  s.N = uint(field(j, "N"), "N");
  s.E = uint(field(j, "E"), "E");
  const std::uint64_t d = uint(field(j, "d"), "d");
  if (d > 64) fail("d too large");
  s.d = static_cast<unsigned>(d);
  s.W = rational(field(j, "W"), "W");
  s.A = rational(field(j, "A"), "A");
  s.symmetric = boolean(field(j, "symmetric"), "symmetric");
  s.strategies_per_player = uint(field(j, "strategies_per_player"), "strategies_per_player");
  const json& size = field(j, "strategy_size");
  if (!size.is_array() || size.size() != 2) fail("strategy_size: expected [min, max]");
  s.strategy_size_min = uint(size[0], "strategy_size");
  s.strategy_size_max = uint(size[1], "strategy_size");
  if (auto it = j.find("coefficient_base"); it != j.end()) s.coefficient_base = rational(*it, "coefficient_base");
  if (auto it = j.find("network"); it != j.end()) {
    NetworkSpec n;
    n.nodes = uint(field(*it, "nodes"), "nodes");
    const json& p = field(*it, "edge_probability");
    if (!p.is_array() || p.size() != 2) fail("edge_probability: expected [num, den]");
    n.edge_num = uint(p[0], "edge_probability");
    n.edge_den = uint(p[1], "edge_probability");
    if (auto m = it->find("max_parallel"); m != it->end()) n.max_parallel = uint(*m, "max_parallel");
    if (auto m = it->find("max_retries"); m != it->end()) n.max_retries = uint(*m, "max_retries");
    if (auto m = it->find("od_policy"); m != it->end()) {
      if (!m->is_string()) fail("od_policy: expected \"common\" or \"random\"");
      const auto v = m->get<std::string>();
      if (v == "common") {
        n.od_policy = OdPolicy::Common;
      } else if (v == "random") {
        n.od_policy = OdPolicy::Random;
      } else {
        fail("od_policy: expected \"common\" or \"random\"");
      }
    }
    s.network = n;
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace wcg::io
