#ifndef COOLSCHED_SCHEDULE_OPTIMIZER_HPP
#define COOLSCHED_SCHEDULE_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coolsched/stationary_model.hpp"

namespace coolsched {

/// n instances over one shared temperature set, plus the step budget m.
struct InstanceFamily {
  std::vector<MonotoneStationaryGraph> msgs;
  long long m = 1;

  InstanceFamily(std::vector<MonotoneStationaryGraph> msgs_, long long m_);
  int instance_count() const { return static_cast<int>(msgs.size()); }
  int level_count() const { return msgs.front().level_count(); }
  const std::vector<double>& temps() const { return msgs.front().temps(); }
};

struct OptimizerResult {
  RunLengthSchedule schedule;
  long long length = 0;
  std::vector<double> per_instance_scores;
  double avg_score = 0.0;
  std::string method;
  std::optional<std::uint64_t> seed;
  // lp_round extras
  double expected_length_bound = 0.0;
  std::vector<char> acceptable;
};

/// Per-temperature repetition counts (index j-1 holds the d_j count); the
/// canonical non-increasing schedule expands d_1 runs first.
using RepsVector = std::vector<long long>;

RunLengthSchedule schedule_from_reps(const InstanceFamily& family, const RepsVector& reps);

/// Final node index of every instance after running the repetition vector.
std::vector<int> final_levels(const InstanceFamily& family, const RepsVector& reps);

/// Algorithm of the identical-paths setting: pairwise worst-case edge
/// lengths, then a shortest path on the forward DAG; the schedule realizes
/// the largest q with dist(v_q) <= m.
OptimizerResult identical_paths(const InstanceFamily& family);

/// Exact product dynamic program of the separate-paths setting over
/// (K+1)^n joint states. Throws RangeError when the state space exceeds
/// state_cap (use lp_round or greedy_cover instead).
OptimizerResult separate_paths_exact(const InstanceFamily& family,
                                     std::size_t state_cap = 2'000'000);

/// Element of the covering set S: `reps` repetitions of temperature d_{temp+1}.
struct CoverElement {
  int temp = 0;        // 0-based temperature index
  long long reps = 1;  // 1..m
};

struct FractionalCover {
  std::vector<double> weights;  // m*K entries, element (j, l) at j*m + (l-1)
  long long m = 0;
  int levels = 0;
  double objective = 0.0;
  bool within_budget = false;  // objective <= m

  double weight(int temp, long long reps) const {
    return weights[static_cast<std::size_t>(temp) * m + (reps - 1)];
  }
};

/// LP relaxation of the all-satisfied covering program: minimize sum l(e) c_e
/// with every (instance, level) pair covered and 0 <= c_e <= 1. Throws
/// ValidationError naming the first uncoverable pair when infeasible.
FractionalCover covering_lp_solve(const InstanceFamily& family);

/// Randomized rounding: element e joins the solution with probability
/// min{alpha c_e, 1}; the output takes the per-temperature max of the
/// selected repetition counts. Acceptability is re-checked via is_acceptable.
OptimizerResult lp_round(const InstanceFamily& family, const FractionalCover& cover,
                         double alpha, std::uint64_t seed);

/// Paper default alpha = 100 (ln|T| + ln n).
double lp_round_default_alpha(const InstanceFamily& family);

/// Cost-ratio greedy for the multi-set cover: growing the selected count of a
/// temperature from l' to l costs only l - l'.
OptimizerResult greedy_cover(const InstanceFamily& family);

struct BruteForceCaps {
  int max_levels = 5;
  long long max_m = 12;
  int max_instances = 4;
};

/// Exhaustive repetition-vector search (test oracle). Ties resolve to the
/// lexicographically smallest vector.
OptimizerResult brute_force_optimal(const InstanceFamily& family,
                                    const BruteForceCaps& caps = {});

InstanceFamily load_family(const std::string& json_text);
std::string save_family(const InstanceFamily& family);
std::string save_result(const OptimizerResult& result);

}  // namespace coolsched

#endif
