#ifndef COOLSCHED_GRAPH_LEARNER_HPP
#define COOLSCHED_GRAPH_LEARNER_HPP

#include <cstdint>
#include <memory>
#include <optional>

#include "coolsched/sa_engine.hpp"
#include "coolsched/stationary_model.hpp"

namespace coolsched {

/// Black-box schedule -> observed success ratio, with a query counter.
class ScoreOracle {
 public:
  virtual ~ScoreOracle() = default;

  double query(const CoolingSchedule& schedule) {
    ++queries_;
    return query_impl(schedule);
  }
  long long query_count() const { return queries_; }

 private:
  virtual double query_impl(const CoolingSchedule& schedule) = 0;
  long long queries_ = 0;
};

/// Returns model_score of a planted graph exactly.
class PlantedExactOracle : public ScoreOracle {
 public:
  explicit PlantedExactOracle(MonotoneStationaryGraph planted) : planted_(std::move(planted)) {}
  const MonotoneStationaryGraph& planted() const { return planted_; }

 private:
  double query_impl(const CoolingSchedule& schedule) override {
    return model_score(planted_, schedule);
  }
  MonotoneStationaryGraph planted_;
};

/// Planted graph plus bounded noise, uniform in [-amplitude, amplitude],
/// drawn per query from a seeded stream.
class PlantedNoisyOracle : public ScoreOracle {
 public:
  PlantedNoisyOracle(MonotoneStationaryGraph planted, double amplitude, std::uint64_t seed)
      : planted_(std::move(planted)), amplitude_(amplitude), seed_(seed) {}

 private:
  double query_impl(const CoolingSchedule& schedule) override;
  MonotoneStationaryGraph planted_;
  double amplitude_;
  std::uint64_t seed_;
  std::uint64_t draw_ = 0;
};

/// Monte Carlo backing over a SearchGraph via the annealing engine.
class SaEngineOracle : public ScoreOracle {
 public:
  SaEngineOracle(SearchGraph graph, long long trials_per_query, std::uint64_t seed,
                 ScoreMode mode = ScoreMode::kEndState)
      : graph_(std::move(graph)), trials_(trials_per_query), seed_(seed), mode_(mode) {}

 private:
  double query_impl(const CoolingSchedule& schedule) override;
  SearchGraph graph_;
  long long trials_;
  std::uint64_t seed_;
  ScoreMode mode_;
  std::uint64_t query_index_ = 0;
};

struct LearnerConfig {
  std::vector<double> temps;   // d_1 > ... > d_K
  long long m = 1;             // schedule budget / repetition cap
  double gap = 0.1;            // minimal score separation between nodes
  long long budget = 0;        // max oracle queries; 0 = unlimited
};

/// True when the schedule's observed score sits within gap/2 of the score of
/// the full-saturation schedule (m copies of every temperature).
bool reaches_top(ScoreOracle& oracle, const LearnerConfig& config,
                 const CoolingSchedule& schedule);

/// Smallest repetition count k <= m for which the probe
/// (m copies of each of d_1..d_i) ++ (k copies of d_j) lands on node v_j,
/// detected against the plateau score of v_j. nullopt when k would exceed m.
std::optional<long long> find_edge_reps(ScoreOracle& oracle, const LearnerConfig& config,
                                        int from_level, int to_level);

/// Recovers the whole graph with O(K^2 log m) queries: plateau scores per
/// level, then a binary search per (i, j) pair, pruning edges implied by a
/// lower source. Throws ValidationError on inconsistent (non-monotone)
/// observations rather than guessing.
MonotoneStationaryGraph learn_msg(ScoreOracle& oracle, const LearnerConfig& config);

/// m copies of each of d_1..d_level, non-increasing (level 0 = empty).
CoolingSchedule saturation_prefix(const LearnerConfig& config, int level);

}  // namespace coolsched

#endif
