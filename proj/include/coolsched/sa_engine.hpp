#ifndef COOLSCHED_SA_ENGINE_HPP
#define COOLSCHED_SA_ENGINE_HPP

#include <cstdint>
#include <vector>

#include "coolsched/search_graph.hpp"
#include "coolsched/temperature_grid.hpp"

namespace coolsched {

/// end_state: success mass is whatever sits on solution nodes after the last
/// step. absorbing: solution nodes are made absorbing first, so the result is
/// the probability of ever hitting a solution within the schedule.
enum class ScoreMode { kEndState, kAbsorbing };

ScoreMode score_mode_from_string(const std::string& s);
std::string to_string(ScoreMode mode);

/// Distribution over graph nodes (indexed like the graph).
std::vector<double> initial_distribution(const SearchGraph& g);

/// One annealing step at temperature t: for node u each out-edge (u,v) takes
/// mass (1/|N(u)|) * accept(max(E(u)-E(v),0), t); the rest stays at u.
/// Dead-end nodes keep all their mass.
std::vector<double> step(const SearchGraph& g, const std::vector<double>& dist, double t);

/// Deterministic score by propagating `step` over the whole schedule.
double exact_score(const SearchGraph& g, const CoolingSchedule& schedule, ScoreMode mode);

struct SimResult {
  int end_node = -1;
  bool success = false;
  std::vector<int> trajectory;  // filled only when requested
};

/// One seeded walk. Per step: uniform out-edge draw, then an acceptance coin.
/// Identical (seed, inputs) gives identical trajectories on every platform.
SimResult simulate(const SearchGraph& g, const CoolingSchedule& schedule, std::uint64_t seed,
                   ScoreMode mode = ScoreMode::kEndState, bool keep_trajectory = false);

struct ScoreEstimate {
  double mean = 0.0;
  long long trials = 0;
  double half_width = 0.0;
  double confidence = 0.0;
};

/// Mean success over `trials` walks with per-trial seeds
/// SplitMix64::split_seed(seed, i); Hoeffding half-width
/// sqrt(ln(2/(1-confidence)) / (2 trials)).
ScoreEstimate estimate_score(const SearchGraph& g, const CoolingSchedule& schedule,
                             long long trials, double confidence, std::uint64_t seed,
                             ScoreMode mode = ScoreMode::kEndState, int threads = 1);

/// Smallest n with 2 e^(-2 n eps^2) <= 1 - confidence.
long long hoeffding_trials(double epsilon, double confidence);

struct SnapGap {
  double score_original = 0.0;
  double score_snapped = 0.0;
  double gap = 0.0;
};

/// Exact score before/after snapping the schedule onto `grid`.
SnapGap snap_gap_empirical(const SearchGraph& g, const CoolingSchedule& schedule,
                           const TemperatureGrid& grid, ScoreMode mode = ScoreMode::kEndState);

}  // namespace coolsched

#endif
