#ifndef COOLSCHED_STATIONARY_MODEL_HPP
#define COOLSCHED_STATIONARY_MODEL_HPP

#include <string>
#include <vector>

#include "coolsched/search_graph.hpp"

namespace coolsched {

/// Forward edge v_from -> v_to whose label is `reps` repetitions of the
/// target's temperature.
struct MsgEdge {
  int from = 0;
  int to = 0;
  long long reps = 1;

  friend bool operator==(const MsgEdge& a, const MsgEdge& b) {
    return a.from == b.from && a.to == b.to && a.reps == b.reps;
  }
};

/// The performance model: nodes v_0..v_K with nondecreasing scores, one node
/// per temperature. Stored edges all point forward; the closure edges
/// (v_i -> v_{i-1} with an empty label, and the self loop labelled d_i) are
/// never stored but every reachability query honors them.
class MonotoneStationaryGraph {
 public:
  /// temps: d_1 > ... > d_K; scores: s_0 <= ... <= s_K, size K+1.
  /// m_cap > 0 additionally bounds edge labels; 0 leaves them unbounded.
  MonotoneStationaryGraph(std::vector<double> temps, std::vector<double> scores,
                          std::vector<MsgEdge> edges, long long m_cap = 0);

  int level_count() const { return static_cast<int>(temps_.size()); }  // K
  const std::vector<double>& temps() const { return temps_; }
  const std::vector<double>& scores() const { return scores_; }
  const std::vector<MsgEdge>& edges() const { return edges_; }

  /// Index of a temperature in temps() (0-based; temp d_{i+1} -> i);
  /// throws ValidationError for temperatures outside the set.
  int temp_index(double t) const;

  /// min reps over stored edges (a, level, r) with a <= from_level;
  /// -1 when no such edge exists. This is the implied-edge closure.
  long long effective_reps(int from_level, int level) const;

 private:
  std::vector<double> temps_;
  std::vector<double> scores_;
  std::vector<MsgEdge> edges_;
};

/// Rightmost node reachable by consuming the schedule left to right
/// (an edge (i,j,r) consumes the next r occurrences of d_j after the
/// position at which level >= i was first attained).
int reachable_index(const MonotoneStationaryGraph& msg, const CoolingSchedule& schedule);

/// scores()[reachable_index(...)].
double model_score(const MonotoneStationaryGraph& msg, const CoolingSchedule& schedule);

/// Stored edges (a,b,r) with a < level <= b.
std::vector<MsgEdge> crossing_edges(const MonotoneStationaryGraph& msg, int level);

/// Schedule contains at least `reps` occurrences of temperature `temp`.
bool encompasses(const CoolingSchedule& schedule, double temp, long long reps);

/// Crossing-cover acceptability: every level 1..K has an encompassed
/// crossing edge. Equivalent to reachable_index == K for non-increasing
/// schedules over temps().
bool is_acceptable(const MonotoneStationaryGraph& msg, const CoolingSchedule& schedule);

MonotoneStationaryGraph load_msg(const std::string& json_text, long long m_cap = 0);
std::string save_msg(const MonotoneStationaryGraph& msg);

}  // namespace coolsched

#endif
