#include "coolsched/stationary_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace coolsched {

using nlohmann::json;

MonotoneStationaryGraph::MonotoneStationaryGraph(std::vector<double> temps,
                                                 std::vector<double> scores,
                                                 std::vector<MsgEdge> edges, long long m_cap)
    : temps_(std::move(temps)), scores_(std::move(scores)), edges_(std::move(edges)) {
  const int K = static_cast<int>(temps_.size());
  if (K < 1) throw ValidationError("a monotone stationary graph needs at least one temperature");
  for (int i = 0; i + 1 < K; ++i)
    if (!(temps_[i] > temps_[i + 1]))
      throw ValidationError("temperatures must be strictly decreasing");
  if (!(temps_[K - 1] > 0.0)) throw ValidationError("temperatures must be positive");
  if (static_cast<int>(scores_.size()) != K + 1)
    throw ValidationError("scores must have K+1 entries (one per node incl. v_0)");
  for (int i = 0; i <= K; ++i) {
    if (!(scores_[i] >= 0.0 && scores_[i] <= 1.0))
      throw ValidationError("scores must lie in [0,1]");
    if (i > 0 && scores_[i] < scores_[i - 1])
      throw ValidationError("scores must be nondecreasing in the node index");
  }
  for (const MsgEdge& e : edges_) {
    if (!(0 <= e.from && e.from < e.to && e.to <= K))
      throw ValidationError("edges must run forward between node indices 0..K");
    if (e.reps < 1) throw ValidationError("edge labels need at least one repetition");
    if (m_cap > 0 && e.reps > m_cap)
      throw ValidationError("edge label exceeds the repetition cap m");
  }
  std::sort(edges_.begin(), edges_.end(), [](const MsgEdge& a, const MsgEdge& b) {
    return a.to != b.to ? a.to < b.to : a.from < b.from;
  });
  // model-monotonicity: farther sources never need fewer repetitions
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    const MsgEdge& lo = edges_[i];
    const MsgEdge& hi = edges_[i + 1];
    if (lo.to == hi.to && lo.from < hi.from && lo.reps < hi.reps)
      throw ValidationError("model monotonicity violated: edge (" + std::to_string(lo.from) +
                            "," + std::to_string(lo.to) + ") is shorter than edge (" +
                            std::to_string(hi.from) + "," + std::to_string(hi.to) + ")");
    if (lo.to == hi.to && lo.from == hi.from)
      throw ValidationError("duplicate edge (" + std::to_string(lo.from) + "," +
                            std::to_string(lo.to) + ")");
  }
}

int MonotoneStationaryGraph::temp_index(double t) const {
  for (int i = 0; i < level_count(); ++i) {
    double d = temps_[i];
    if (t == d || std::fabs(t - d) <= 1e-12 * std::max(std::fabs(t), std::fabs(d))) return i;
  }
  throw ValidationError("temperature " + std::to_string(t) +
                        " is not in the model's temperature set");
}

long long MonotoneStationaryGraph::effective_reps(int from_level, int level) const {
  long long best = -1;
  for (const MsgEdge& e : edges_)
    if (e.to == level && e.from <= from_level && (best < 0 || e.reps < best)) best = e.reps;
  return best;
}

namespace {

// schedule temps as node indices 1..K (temp d_i has node index i = temp_index + 1)
std::vector<int> schedule_levels(const MonotoneStationaryGraph& msg,
                                 const CoolingSchedule& schedule) {
  std::vector<int> levels;
  levels.reserve(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i)
    levels.push_back(msg.temp_index(schedule[i]) + 1);
  return levels;
}

}  // namespace

int reachable_index(const MonotoneStationaryGraph& msg, const CoolingSchedule& schedule) {
  const int K = msg.level_count();
  const std::vector<int> levels = schedule_levels(msg, schedule);

  // occurrence positions per node index 1..K
  std::vector<std::vector<long long>> occ(K + 1);
  for (std::size_t pos = 0; pos < levels.size(); ++pos)
    occ[levels[pos]].push_back(static_cast<long long>(pos));

  constexpr long long kUnreached = std::numeric_limits<long long>::max();
  // earliest[j]: minimal consumed-prefix length after which v_j is attained.
  std::vector<long long> earliest(K + 1, kUnreached);
  earliest[0] = 0;
  for (int j = 1; j <= K; ++j) {
    for (const MsgEdge& e : msg.edges()) {
      if (e.to != j) continue;
      // the edge is usable once any node with index >= e.from is attained;
      // nodes beyond j cannot help (reaching them is already better)
      long long enable = kUnreached;
      for (int u = e.from; u < j; ++u) enable = std::min(enable, earliest[u]);
      if (enable == kUnreached) continue;
      const auto& positions = occ[j];
      auto it = std::lower_bound(positions.begin(), positions.end(), enable);
      if (positions.end() - it >= e.reps) {
        earliest[j] = std::min(earliest[j], *(it + e.reps - 1) + 1);
      }
    }
  }
  int best = 0;
  for (int j = K; j >= 1; --j)
    if (earliest[j] != kUnreached) {
      best = j;
      break;
    }
  return best;
}

double model_score(const MonotoneStationaryGraph& msg, const CoolingSchedule& schedule) {
  return msg.scores()[reachable_index(msg, schedule)];
}

std::vector<MsgEdge> crossing_edges(const MonotoneStationaryGraph& msg, int level) {
  if (level < 1 || level > msg.level_count())
    throw ValidationError("crossing level must be in 1..K");
  std::vector<MsgEdge> out;
  for (const MsgEdge& e : msg.edges())
    if (e.from < level && level <= e.to) out.push_back(e);
  return out;
}

bool encompasses(const CoolingSchedule& schedule, double temp, long long reps) {
  long long count = 0;
  for (std::size_t i = 0; i < schedule.size(); ++i)
    if (schedule[i] == temp ||
        std::fabs(schedule[i] - temp) <= 1e-12 * std::max(std::fabs(schedule[i]), std::fabs(temp)))
      ++count;
  return count >= reps;
}

bool is_acceptable(const MonotoneStationaryGraph& msg, const CoolingSchedule& schedule) {
  const int K = msg.level_count();
  const std::vector<int> levels = schedule_levels(msg, schedule);
  std::vector<long long> count(K + 1, 0);
  for (int lv : levels) ++count[lv];
  for (int i = 1; i <= K; ++i) {
    bool covered = false;
    for (const MsgEdge& e : msg.edges())
      if (e.from < i && i <= e.to && count[e.to] >= e.reps) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

MonotoneStationaryGraph load_msg(const std::string& json_text, long long m_cap) {
  json j = json::parse(json_text);
  std::vector<double> temps = j.at("temps").get<std::vector<double>>();
  std::vector<double> scores = j.at("scores").get<std::vector<double>>();
  std::vector<MsgEdge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(), e.at("reps").get<long long>()});
  return MonotoneStationaryGraph(std::move(temps), std::move(scores), std::move(edges), m_cap);
}

std::string save_msg(const MonotoneStationaryGraph& msg) {
  json j;
  j["temps"] = msg.temps();
  j["scores"] = msg.scores();
  j["edges"] = json::array();
  for (const MsgEdge& e : msg.edges())
    j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"reps", e.reps}});
  return j.dump(2);
}

}  // namespace coolsched
