#include "coolsched/search_graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace coolsched {

using nlohmann::json;

int SearchGraph::index_of(const std::string& id) const {
  for (int i = 0; i < node_count(); ++i)
    if (ids[i] == id) return i;
  return -1;
}

double accept_probability(double delta_e, double t) {
  if (delta_e <= 0.0) return 1.0;
  if (t == kInfTemp) return 1.0;
  return std::exp(-delta_e / t);
}

std::vector<std::string> validate(const SearchGraph& g) {
  std::vector<std::string> bad;
  const int n = g.node_count();
  if (g.e_max < 1) bad.push_back("e_max must be a positive integer");
  if (static_cast<int>(g.energy.size()) != n || static_cast<int>(g.out.size()) != n ||
      static_cast<int>(g.solution.size()) != n || static_cast<int>(g.initial.size()) != n) {
    bad.push_back("internal arrays disagree on node count");
    return bad;
  }
  for (int i = 0; i < n; ++i) {
    if (g.energy[i] < 1 || g.energy[i] > g.e_max) {
      bad.push_back("energy out of range [1, e_max] at node '" + g.ids[i] + "'");
    }
    for (std::size_t k = 0; k < g.out[i].size(); ++k) {
      int v = g.out[i][k];
      if (v < 0 || v >= n) {
        bad.push_back("edge " + std::to_string(k) + " of node '" + g.ids[i] +
                      "' points to an undeclared node");
      }
    }
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (g.initial[i] < 0.0)
      bad.push_back("negative initial probability at node '" + g.ids[i] + "'");
    sum += g.initial[i];
  }
  if (n > 0 && std::fabs(sum - 1.0) > 1e-9)
    bad.push_back("initial distribution sums to " + std::to_string(sum) + ", expected 1");
  return bad;
}

namespace {

SearchGraph graph_from_json(const json& j) {
  SearchGraph g;
  g.e_max = j.at("e_max").get<long long>();
  std::unordered_map<std::string, int> index;
  for (const auto& node : j.at("nodes")) {
    std::string id = node.at("id").get<std::string>();
    if (index.count(id)) throw ValidationError("duplicate node id '" + id + "'");
    index[id] = g.node_count();
    g.ids.push_back(id);
    g.energy.push_back(node.at("energy").get<long long>());
  }
  g.out.assign(g.node_count(), {});
  for (const auto& e : j.at("edges")) {
    std::string u = e.at(0).get<std::string>(), v = e.at(1).get<std::string>();
    auto iu = index.find(u), iv = index.find(v);
    if (iu == index.end())
      throw ValidationError("edge [" + u + "," + v + "] leaves an undeclared node");
    if (iv == index.end())
      throw ValidationError("edge [" + u + "," + v + "] points to an undeclared node");
    g.out[iu->second].push_back(iv->second);
  }
  g.solution.assign(g.node_count(), 0);
  for (const auto& s : j.at("solutions")) {
    auto it = index.find(s.get<std::string>());
    if (it == index.end())
      throw ValidationError("solution '" + s.get<std::string>() + "' is not a declared node");
    g.solution[it->second] = 1;
  }
  const auto& init = j.at("initial");
  g.initial.assign(g.node_count(), 0.0);
  if (init.is_string() && init.get<std::string>() == "uniform") {
    g.uniform_initial = true;
    if (g.node_count() > 0)
      std::fill(g.initial.begin(), g.initial.end(), 1.0 / g.node_count());
  } else if (init.is_object()) {
    for (auto it = init.begin(); it != init.end(); ++it) {
      auto in = index.find(it.key());
      if (in == index.end())
        throw ValidationError("initial entry '" + it.key() + "' is not a declared node");
      g.initial[in->second] = it.value().get<double>();
    }
  } else {
    throw ValidationError("initial must be \"uniform\" or an {id: probability} object");
  }
  auto bad = validate(g);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "invalid search graph:";
    for (const auto& b : bad) os << "\n  - " << b;
    throw ValidationError(os.str());
  }
  return g;
}

}  // namespace

SearchGraph load_graph(const std::string& json_text) {
  return graph_from_json(json::parse(json_text));
}

std::string save_graph(const SearchGraph& g) {
  json j;
  j["e_max"] = g.e_max;
  j["nodes"] = json::array();
  for (int i = 0; i < g.node_count(); ++i)
    j["nodes"].push_back({{"id", g.ids[i]}, {"energy", g.energy[i]}});
  j["edges"] = json::array();
  for (int u = 0; u < g.node_count(); ++u)
    for (int v : g.out[u]) j["edges"].push_back({g.ids[u], g.ids[v]});
  j["solutions"] = json::array();
  for (int i = 0; i < g.node_count(); ++i)
    if (g.solution[i]) j["solutions"].push_back(g.ids[i]);
  if (g.uniform_initial) {
    j["initial"] = "uniform";
  } else {
    json init = json::object();
    for (int i = 0; i < g.node_count(); ++i)
      if (g.initial[i] != 0.0) init[g.ids[i]] = g.initial[i];
    j["initial"] = init;
  }
  return j.dump(2);
}

namespace {

bool schedule_ordered(const std::vector<double>& temps) {
  for (std::size_t i = 0; i + 1 < temps.size(); ++i)
    if (temps[i] < temps[i + 1]) return false;
  return true;
}

}  // namespace

CoolingSchedule::CoolingSchedule(std::vector<double> temps) : temps_(std::move(temps)) {
  for (double t : temps_)
    if (!(t > 0.0)) throw ValidationError("schedule temperatures must be positive");
  if (!schedule_ordered(temps_))
    throw ValidationError("schedule temperatures must be non-increasing");
}

CoolingSchedule CoolingSchedule::sorted_from(std::vector<double> temps) {
  std::sort(temps.begin(), temps.end(), std::greater<double>());
  return CoolingSchedule(std::move(temps));
}

CoolingSchedule RunLengthSchedule::expand() const {
  std::vector<double> temps;
  temps.reserve(static_cast<std::size_t>(total_steps()));
  for (const auto& [t, c] : runs)
    for (long long i = 0; i < c; ++i) temps.push_back(t);
  return CoolingSchedule(std::move(temps));
}

long long RunLengthSchedule::total_steps() const {
  long long n = 0;
  for (const auto& [t, c] : runs) n += c;
  return n;
}

RunLengthSchedule RunLengthSchedule::compress(const CoolingSchedule& s) {
  RunLengthSchedule r;
  for (double t : s.temps()) {
    if (!r.runs.empty() && r.runs.back().first == t) {
      ++r.runs.back().second;
    } else {
      r.runs.push_back({t, 1});
    }
  }
  return r;
}

namespace {

double temp_from_json(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInfTemp;
    throw ValidationError("temperature string must be \"inf\"");
  }
  return v.get<double>();
}

json temp_to_json(double t) {
  if (t == kInfTemp) return json("inf");
  return json(t);
}

}  // namespace

CoolingSchedule load_schedule(const std::string& json_text) {
  json j = json::parse(json_text);
  std::vector<double> temps;
  if (j.contains("temps")) {
    for (const auto& v : j["temps"]) temps.push_back(temp_from_json(v));
  } else if (j.contains("runs")) {
    for (const auto& r : j["runs"]) {
      double t = temp_from_json(r.at(0));
      long long c = r.at(1).get<long long>();
      if (c < 1) throw ValidationError("run count must be >= 1");
      for (long long i = 0; i < c; ++i) temps.push_back(t);
    }
  } else {
    throw ValidationError("schedule JSON needs a \"temps\" or \"runs\" field");
  }
  return CoolingSchedule(std::move(temps));
}

std::string save_schedule(const CoolingSchedule& s) {
  json j;
  j["temps"] = json::array();
  for (double t : s.temps()) j["temps"].push_back(temp_to_json(t));
  return j.dump(2);
}

std::string save_schedule(const RunLengthSchedule& s) {
  json j;
  j["runs"] = json::array();
  for (const auto& [t, c] : s.runs) j["runs"].push_back({temp_to_json(t), c});
  return j.dump(2);
}

}  // namespace coolsched
