#ifndef COOLSCHED_SEARCH_GRAPH_HPP
#define COOLSCHED_SEARCH_GRAPH_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coolsched/common.hpp"

namespace coolsched {

/// Explicit directed multigraph the annealing walk runs on. Node energies are
/// positive integers; parallel edges are kept in order (they bias the uniform
/// edge draw); a node without out-edges keeps the walk in place.
struct SearchGraph {
  std::vector<std::string> ids;              // node index -> external id
  std::vector<long long> energy;             // in [1, e_max]
  std::vector<std::vector<int>> out;         // ordered multiset of targets
  std::vector<char> solution;                // 1 if acceptable solution node
  std::vector<double> initial;               // initial distribution (always materialized)
  bool uniform_initial = false;              // remembers the "uniform" marker for round-trips
  long long e_max = 1;

  int node_count() const { return static_cast<int>(ids.size()); }
  int index_of(const std::string& id) const;  // -1 if unknown
};

/// Probability that a move of energy drop `delta_e` is taken at temperature t.
/// Uphill and equal-energy moves (delta_e == 0) are always taken; downhill
/// moves with probability e^(-delta_e / t); everything at t = inf.
double accept_probability(double delta_e, double t);

/// Every invariant violation, with node/edge identity. Empty means valid.
std::vector<std::string> validate(const SearchGraph& g);

/// JSON (de)serialization. load_graph throws ValidationError when the parsed
/// graph breaks an invariant, std::runtime_error with context on bad JSON.
SearchGraph load_graph(const std::string& json_text);
std::string save_graph(const SearchGraph& g);

/// Non-increasing sequence of positive temperatures (kInfTemp allowed and
/// sorts above every finite value).
class CoolingSchedule {
 public:
  CoolingSchedule() = default;
  /// Throws ValidationError unless temps is non-increasing and positive.
  explicit CoolingSchedule(std::vector<double> temps);
  /// Sorts an arbitrary positive multiset into schedule order.
  static CoolingSchedule sorted_from(std::vector<double> temps);

  const std::vector<double>& temps() const { return temps_; }
  std::size_t size() const { return temps_.size(); }
  bool empty() const { return temps_.empty(); }
  double operator[](std::size_t i) const { return temps_[i]; }

 private:
  std::vector<double> temps_;
};

/// Canonical compressed form: (temperature, count) with strictly decreasing
/// temperatures.
struct RunLengthSchedule {
  std::vector<std::pair<double, long long>> runs;

  CoolingSchedule expand() const;
  long long total_steps() const;
  static RunLengthSchedule compress(const CoolingSchedule& s);
};

CoolingSchedule load_schedule(const std::string& json_text);
std::string save_schedule(const CoolingSchedule& s);
std::string save_schedule(const RunLengthSchedule& s);

}  // namespace coolsched

#endif
