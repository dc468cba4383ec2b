#include "coolsched/graph_learner.hpp"

#include <algorithm>
#include <cmath>

#include "coolsched/rng.hpp"

namespace coolsched {

double PlantedNoisyOracle::query_impl(const CoolingSchedule& schedule) {
  SplitMix64 rng(SplitMix64::split_seed(seed_, draw_++));
  double noise = (2.0 * rng.next_unit() - 1.0) * amplitude_;
  return model_score(planted_, schedule) + noise;
}

double SaEngineOracle::query_impl(const CoolingSchedule& schedule) {
  return estimate_score(graph_, schedule, trials_,
                        /*confidence=*/0.999, SplitMix64::split_seed(seed_, query_index_++),
                        mode_)
      .mean;
}

namespace {

void check_budget(const ScoreOracle& oracle, const LearnerConfig& config) {
  if (config.budget > 0 && oracle.query_count() > config.budget)
    throw RangeError("oracle query budget of " + std::to_string(config.budget) + " exceeded");
}

double query(ScoreOracle& oracle, const LearnerConfig& config, const CoolingSchedule& s) {
  double v = oracle.query(s);
  check_budget(oracle, config);
  return v;
}

}  // namespace

CoolingSchedule saturation_prefix(const LearnerConfig& config, int level) {
  std::vector<double> temps;
  temps.reserve(static_cast<std::size_t>(level) * static_cast<std::size_t>(config.m));
  for (int j = 0; j < level; ++j)
    for (long long r = 0; r < config.m; ++r) temps.push_back(config.temps[j]);
  return CoolingSchedule(std::move(temps));
}

bool reaches_top(ScoreOracle& oracle, const LearnerConfig& config,
                 const CoolingSchedule& schedule) {
  const int K = static_cast<int>(config.temps.size());
  double reference = query(oracle, config, saturation_prefix(config, K));
  double observed = query(oracle, config, schedule);
  return std::fabs(observed - reference) <= config.gap / 2.0;
}

namespace {

// probe = saturated prefix through d_i, then k copies of d_j
CoolingSchedule probe_schedule(const LearnerConfig& config, int from_level, int to_level,
                               long long k) {
  std::vector<double> temps = saturation_prefix(config, from_level).temps();
  for (long long r = 0; r < k; ++r) temps.push_back(config.temps[to_level - 1]);
  return CoolingSchedule(std::move(temps));
}

struct PlateauTable {
  std::vector<double> score;     // plateau score per level 0..K
  std::vector<char> observable;  // level j attains a fresh plateau (L_j == j)
};

PlateauTable measure_plateaus(ScoreOracle& oracle, const LearnerConfig& config) {
  const int K = static_cast<int>(config.temps.size());
  PlateauTable table;
  table.score.resize(K + 1);
  table.observable.assign(K + 1, 1);
  for (int j = 0; j <= K; ++j) {
    table.score[j] = query(oracle, config, saturation_prefix(config, j));
    if (j > 0) {
      // a fresh plateau differs from the previous one by at least the gap
      table.observable[j] = std::fabs(table.score[j] - table.score[j - 1]) > config.gap / 2.0;
      if (table.score[j] < table.score[j - 1] - config.gap / 2.0)
        throw ValidationError("inconsistent oracle: plateau score decreased from level " +
                              std::to_string(j - 1) + " to " + std::to_string(j));
    }
  }
  return table;
}

// smallest k in [1, m] whose probe lands on v_to (score within gap/2 of the
// level-to plateau); -1 when even m copies do not get there
long long search_edge(ScoreOracle& oracle, const LearnerConfig& config,
                      const PlateauTable& plateaus, int from_level, int to_level) {
  auto lands = [&](long long k) {
    double observed = query(oracle, config, probe_schedule(config, from_level, to_level, k));
    return std::fabs(observed - plateaus.score[to_level]) <= config.gap / 2.0;
  };
  if (!lands(config.m)) return -1;
  long long lo = 1, hi = config.m;  // invariant: lands(hi)
  while (lo < hi) {
    long long mid = lo + (hi - lo) / 2;
    if (lands(mid)) hi = mid;
    else lo = mid + 1;
  }
  return hi;
}

}  // namespace

std::optional<long long> find_edge_reps(ScoreOracle& oracle, const LearnerConfig& config,
                                        int from_level, int to_level) {
  const int K = static_cast<int>(config.temps.size());
  if (!(0 <= from_level && from_level < to_level && to_level <= K))
    throw ValidationError("find_edge_reps needs 0 <= from < to <= K");
  PlateauTable plateaus = measure_plateaus(oracle, config);
  if (!plateaus.observable[to_level]) return std::nullopt;
  long long k = search_edge(oracle, config, plateaus, from_level, to_level);
  if (k < 0) return std::nullopt;
  return k;
}

MonotoneStationaryGraph learn_msg(ScoreOracle& oracle, const LearnerConfig& config) {
  const int K = static_cast<int>(config.temps.size());
  PlateauTable plateaus = measure_plateaus(oracle, config);

  std::vector<MsgEdge> edges;
  for (int j = K; j >= 1; --j) {
    if (!plateaus.observable[j]) continue;  // no schedule can land exactly on v_j
    long long implied = -1;  // reps already available from a lower source
    for (int i = 0; i < j; ++i) {
      long long k = search_edge(oracle, config, plateaus, i, j);
      if (k < 0) continue;
      if (implied >= 0 && k >= implied) continue;  // the closure already gives this
      edges.push_back({i, j, k});
      implied = k;
    }
  }

  // scores: the plateau of each level (monotone by the consistency check)
  std::vector<double> scores = plateaus.score;
  for (int j = 1; j <= K; ++j) scores[j] = std::max(scores[j], scores[j - 1]);
  for (double& s : scores) s = std::clamp(s, 0.0, 1.0);

  return MonotoneStationaryGraph(config.temps, std::move(scores), std::move(edges), config.m);
}

}  // namespace coolsched
