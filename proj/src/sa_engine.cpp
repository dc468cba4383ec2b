#include "coolsched/sa_engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "coolsched/rng.hpp"

namespace coolsched {

ScoreMode score_mode_from_string(const std::string& s) {
  if (s == "end_state" || s == "end") return ScoreMode::kEndState;
  if (s == "absorbing" || s == "absorb") return ScoreMode::kAbsorbing;
  throw ValidationError("unknown score mode '" + s + "' (use end_state or absorbing)");
}

std::string to_string(ScoreMode mode) {
  return mode == ScoreMode::kEndState ? "end_state" : "absorbing";
}

std::vector<double> initial_distribution(const SearchGraph& g) { return g.initial; }

namespace {

// Out-edges with solution nodes turned into dead-ends.
std::vector<std::vector<int>> absorbing_out(const SearchGraph& g) {
  std::vector<std::vector<int>> out = g.out;
  for (int u = 0; u < g.node_count(); ++u)
    if (g.solution[u]) out[u].clear();
  return out;
}

std::vector<double> step_with(const SearchGraph& g, const std::vector<std::vector<int>>& out,
                              const std::vector<double>& dist, double t) {
  std::vector<double> next(g.node_count(), 0.0);
  for (int u = 0; u < g.node_count(); ++u) {
    double mass = dist[u];
    if (mass == 0.0) continue;
    if (out[u].empty()) {
      next[u] += mass;
      continue;
    }
    double stay = mass;
    const double per_edge = mass / static_cast<double>(out[u].size());
    for (int v : out[u]) {
      double moved = per_edge * accept_probability(
                                    static_cast<double>(g.energy[u] - g.energy[v]), t);
      next[v] += moved;
      stay -= moved;
    }
    next[u] += stay;
  }
  return next;
}

}  // namespace

std::vector<double> step(const SearchGraph& g, const std::vector<double>& dist, double t) {
  return step_with(g, g.out, dist, t);
}

double exact_score(const SearchGraph& g, const CoolingSchedule& schedule, ScoreMode mode) {
  const std::vector<std::vector<int>> out =
      mode == ScoreMode::kAbsorbing ? absorbing_out(g) : g.out;
  std::vector<double> dist = g.initial;
  for (std::size_t i = 0; i < schedule.size(); ++i) dist = step_with(g, out, dist, schedule[i]);
  double score = 0.0;
  for (int u = 0; u < g.node_count(); ++u)
    if (g.solution[u]) score += dist[u];
  return score;
}

SimResult simulate(const SearchGraph& g, const CoolingSchedule& schedule, std::uint64_t seed,
                   ScoreMode mode, bool keep_trajectory) {
  SplitMix64 rng(seed);
  SimResult res;

  // draw the start node from the initial distribution
  double u01 = rng.next_unit();
  int node = g.node_count() - 1;
  double acc = 0.0;
  for (int i = 0; i < g.node_count(); ++i) {
    acc += g.initial[i];
    if (u01 < acc) {
      node = i;
      break;
    }
  }
  if (keep_trajectory) res.trajectory.push_back(node);
  bool hit = g.solution[node] != 0;

  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const bool frozen = mode == ScoreMode::kAbsorbing && g.solution[node];
    if (!frozen && !g.out[node].empty()) {
      int target = g.out[node][rng.next_below(g.out[node].size())];
      double a = accept_probability(static_cast<double>(g.energy[node] - g.energy[target]),
                                    schedule[i]);
      if (rng.next_unit() < a) node = target;
    }
    if (keep_trajectory) res.trajectory.push_back(node);
    hit = hit || g.solution[node];
  }
  res.end_node = node;
  res.success = mode == ScoreMode::kAbsorbing ? hit : g.solution[node] != 0;
  return res;
}

ScoreEstimate estimate_score(const SearchGraph& g, const CoolingSchedule& schedule,
                             long long trials, double confidence, std::uint64_t seed,
                             ScoreMode mode, int threads) {
  if (trials < 1) throw ValidationError("estimate_score needs trials >= 1");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw ValidationError("confidence must be in (0,1)");

  auto run_block = [&](long long lo, long long hi) {
    long long successes = 0;
    for (long long i = lo; i < hi; ++i)
      if (simulate(g, schedule, SplitMix64::split_seed(seed, static_cast<std::uint64_t>(i)),
                   mode)
              .success)
        ++successes;
    return successes;
  };

  long long successes = 0;
  if (threads <= 1) {
    successes = run_block(0, trials);
  } else {
    // trials are independently seeded by index, so the block split cannot
    // change the aggregate
    const long long block = (trials + threads - 1) / threads;
    std::vector<std::future<long long>> futs;
    for (long long lo = 0; lo < trials; lo += block)
      futs.push_back(std::async(std::launch::async, run_block, lo, std::min(lo + block, trials)));
    for (auto& f : futs) successes += f.get();
  }

  ScoreEstimate est;
  est.trials = trials;
  est.confidence = confidence;
  est.mean = static_cast<double>(successes) / static_cast<double>(trials);
  est.half_width = std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * trials));
  return est;
}

long long hoeffding_trials(double epsilon, double confidence) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must be in (0,1)");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw ValidationError("confidence must be in (0,1)");
  return static_cast<long long>(
      std::ceil(std::log(2.0 / (1.0 - confidence)) / (2.0 * epsilon * epsilon)));
}

SnapGap snap_gap_empirical(const SearchGraph& g, const CoolingSchedule& schedule,
                           const TemperatureGrid& grid, ScoreMode mode) {
  SnapGap out;
  out.score_original = exact_score(g, schedule, mode);
  out.score_snapped = exact_score(g, snap(schedule, grid), mode);
  out.gap = std::fabs(out.score_original - out.score_snapped);
  return out;
}

}  // namespace coolsched
