#include "coolsched/schedule_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "coolsched/rng.hpp"
#include "coolsched/simplex.hpp"
#include "json.hpp"

namespace coolsched {

using nlohmann::json;

namespace {

constexpr long long kNoEdge = -1;

double replay_scores(const InstanceFamily& family, const RunLengthSchedule& schedule,
                     std::vector<double>* per_instance) {
  CoolingSchedule expanded = schedule.expand();
  per_instance->clear();
  double total = 0.0;
  for (const auto& msg : family.msgs) {
    double s = model_score(msg, expanded);
    per_instance->push_back(s);
    total += s;
  }
  return total / family.instance_count();
}

OptimizerResult make_result(const InstanceFamily& family, const RepsVector& reps,
                            std::string method) {
  OptimizerResult res;
  res.schedule = schedule_from_reps(family, reps);
  res.length = res.schedule.total_steps();
  res.method = std::move(method);
  res.avg_score = replay_scores(family, res.schedule, &res.per_instance_scores);
  return res;
}

}  // namespace

InstanceFamily::InstanceFamily(std::vector<MonotoneStationaryGraph> msgs_, long long m_)
    : msgs(std::move(msgs_)), m(m_) {
  if (msgs.empty()) throw ValidationError("a family needs at least one instance");
  if (m < 0) throw ValidationError("the budget m must be nonnegative");
  const auto& temps = msgs.front().temps();
  for (const auto& msg : msgs)
    if (msg.temps() != temps)
      throw ValidationError("all instances must share the same temperature set");
}

RunLengthSchedule schedule_from_reps(const InstanceFamily& family, const RepsVector& reps) {
  RunLengthSchedule s;
  for (int j = 0; j < family.level_count(); ++j)
    if (reps[j] > 0) s.runs.push_back({family.temps()[j], reps[j]});
  return s;
}

std::vector<int> final_levels(const InstanceFamily& family, const RepsVector& reps) {
  // moving whenever possible is dominant: higher levels never need more
  // repetitions later (the implied-edge closure is monotone in the source)
  std::vector<int> level(family.instance_count(), 0);
  for (int j = 1; j <= family.level_count(); ++j) {
    for (int k = 0; k < family.instance_count(); ++k) {
      long long need = family.msgs[k].effective_reps(level[k], j);
      if (need != kNoEdge && need <= reps[j - 1]) level[k] = j;
    }
  }
  return level;
}

OptimizerResult identical_paths(const InstanceFamily& family) {
  const int K = family.level_count();
  const long long unusable = std::numeric_limits<long long>::max();

  // worst-case repetitions per (i, j); a pair is usable only when every
  // instance has the (possibly implied) edge
  std::vector<std::vector<long long>> need(K + 1, std::vector<long long>(K + 1, unusable));
  for (int i = 0; i <= K; ++i) {
    for (int j = i + 1; j <= K; ++j) {
      long long worst = 0;
      for (const auto& msg : family.msgs) {
        long long r = msg.effective_reps(i, j);
        if (r == kNoEdge) {
          worst = unusable;
          break;
        }
        worst = std::max(worst, r);
      }
      need[i][j] = worst;
    }
  }

  std::vector<long long> dist(K + 1, unusable);
  std::vector<int> pred(K + 1, -1);
  dist[0] = 0;
  for (int j = 1; j <= K; ++j) {
    for (int i = 0; i < j; ++i) {
      if (dist[i] == unusable || need[i][j] == unusable) continue;
      long long d = dist[i] + need[i][j];
      // on ties keep the largest predecessor (prefer the through-path)
      if (d < dist[j] || (d == dist[j] && i > pred[j])) {
        dist[j] = d;
        pred[j] = i;
      }
    }
  }

  int q = 0;
  for (int j = K; j >= 1; --j)
    if (dist[j] <= family.m) {
      q = j;
      break;
    }

  RepsVector reps(K, 0);
  for (int j = q; j > 0; j = pred[j]) reps[j - 1] = need[pred[j]][j];
  return make_result(family, reps, "identical");
}

OptimizerResult separate_paths_exact(const InstanceFamily& family, std::size_t state_cap) {
  const int K = family.level_count();
  const int n = family.instance_count();

  double states = 1.0;
  for (int k = 0; k < n; ++k) states *= K + 1;
  if (states > static_cast<double>(state_cap))
    throw RangeError("separate-paths product state space has " + std::to_string(states) +
                     " states, over the cap of " + std::to_string(state_cap) +
                     "; use lp-round or greedy instead");

  struct Record {
    long long cost;
    RepsVector reps;
  };
  auto better = [](const Record& a, const Record& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.reps < b.reps;  // lexicographic tie-break
  };

  std::map<std::vector<int>, Record> layer;
  layer[std::vector<int>(n, 0)] = {0, RepsVector(K, 0)};

  for (int j = 1; j <= K; ++j) {
    std::map<std::vector<int>, Record> next;
    for (const auto& [state, rec] : layer) {
      // candidate counts: 0 plus each instance's threshold from its level
      std::set<long long> candidates = {0};
      for (int k = 0; k < n; ++k) {
        long long need = family.msgs[k].effective_reps(state[k], j);
        if (need != kNoEdge && need <= family.m) candidates.insert(need);
      }
      for (long long r : candidates) {
        if (rec.cost + r > family.m) continue;
        std::vector<int> moved = state;
        for (int k = 0; k < n; ++k) {
          long long need = family.msgs[k].effective_reps(state[k], j);
          if (need != kNoEdge && need <= r) moved[k] = j;
        }
        Record cand{rec.cost + r, rec.reps};
        cand.reps[j - 1] = r;
        auto it = next.find(moved);
        if (it == next.end() || better(cand, it->second)) next[moved] = std::move(cand);
      }
    }
    layer = std::move(next);
  }

  bool found = false;
  double best_score = -1.0;
  Record best{0, RepsVector(K, 0)};
  for (const auto& [state, rec] : layer) {
    double score = 0.0;
    for (int k = 0; k < n; ++k) score += family.msgs[k].scores()[state[k]];
    score /= n;
    if (!found || score > best_score || (score == best_score && better(rec, best))) {
      found = true;
      best_score = score;
      best = rec;
    }
  }
  return make_result(family, best.reps, "separate");
}

namespace {

// element (j 0-based, reps) covers pair (k, level) iff instance k has a
// crossing edge (a, j+1, r) with a < level <= j+1 and r <= reps
bool element_covers(const InstanceFamily& family, int k, int level, int temp, long long reps) {
  for (const MsgEdge& e : family.msgs[k].edges())
    if (e.to == temp + 1 && e.from < level && level <= e.to && e.reps <= reps) return true;
  return false;
}

void require_coverable(const InstanceFamily& family) {
  const int K = family.level_count();
  for (int k = 0; k < family.instance_count(); ++k) {
    for (int level = 1; level <= K; ++level) {
      bool any = false;
      for (const MsgEdge& e : family.msgs[k].edges())
        if (e.from < level && level <= e.to && e.reps <= family.m) {
          any = true;
          break;
        }
      if (!any)
        throw ValidationError("covering system infeasible: level " + std::to_string(level) +
                              " of instance " + std::to_string(k) +
                              " has no crossing edge within the budget");
    }
  }
}

}  // namespace

FractionalCover covering_lp_solve(const InstanceFamily& family) {
  require_coverable(family);
  const int K = family.level_count();
  const int n = family.instance_count();
  const long long m = family.m;
  const std::size_t vars = static_cast<std::size_t>(K) * m;

  LpProblem lp;
  lp.c.resize(vars);
  lp.upper.assign(vars, 1.0);
  for (int j = 0; j < K; ++j)
    for (long long l = 1; l <= m; ++l) lp.c[j * m + (l - 1)] = static_cast<double>(l);
  for (int k = 0; k < n; ++k) {
    for (int level = 1; level <= K; ++level) {
      std::vector<double> row(vars, 0.0);
      for (int j = 0; j < K; ++j)
        for (long long l = 1; l <= m; ++l)
          if (element_covers(family, k, level, j, l)) row[j * m + (l - 1)] = 1.0;
      lp.a.push_back(std::move(row));
      lp.b.push_back(1.0);
    }
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::kOptimal)
    throw ValidationError("covering LP unexpectedly infeasible");
  FractionalCover cover;
  cover.weights = sol.x;
  cover.m = m;
  cover.levels = K;
  cover.objective = sol.objective;
  cover.within_budget = sol.objective <= static_cast<double>(m) + 1e-6;
  return cover;
}

OptimizerResult lp_round(const InstanceFamily& family, const FractionalCover& cover,
                         double alpha, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
  const int K = family.level_count();
  SplitMix64 rng(seed);
  RepsVector reps(K, 0);
  for (int j = 0; j < K; ++j) {
    for (long long l = 1; l <= cover.m; ++l) {
      double p = std::min(alpha * cover.weight(j, l), 1.0);
      if (p > 0.0 && rng.next_unit() < p) reps[j] = std::max(reps[j], l);
    }
  }
  OptimizerResult res = make_result(family, reps, "lp-round");
  res.seed = seed;
  res.expected_length_bound = alpha * static_cast<double>(family.m);
  CoolingSchedule expanded = res.schedule.expand();
  for (const auto& msg : family.msgs)
    res.acceptable.push_back(is_acceptable(msg, expanded) ? 1 : 0);
  return res;
}

double lp_round_default_alpha(const InstanceFamily& family) {
  return 100.0 * (std::log(static_cast<double>(family.level_count())) +
                  std::log(static_cast<double>(family.instance_count())));
}

OptimizerResult greedy_cover(const InstanceFamily& family) {
  require_coverable(family);
  const int K = family.level_count();
  const int n = family.instance_count();

  // distinct useful repetition counts per temperature
  std::vector<std::vector<long long>> useful(K);
  for (const auto& msg : family.msgs)
    for (const MsgEdge& e : msg.edges())
      if (e.reps <= family.m) useful[e.to - 1].push_back(e.reps);
  for (auto& u : useful) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }

  std::vector<std::vector<char>> covered(n, std::vector<char>(K + 1, 0));
  long long uncovered = static_cast<long long>(n) * K;
  RepsVector selected(K, 0);

  while (uncovered > 0) {
    int best_j = -1;
    long long best_l = 0, best_gain = 0, best_cost = 0;
    for (int j = 0; j < K; ++j) {
      for (long long l : useful[j]) {
        if (l <= selected[j]) continue;
        long long gain = 0;
        for (int k = 0; k < n; ++k)
          for (int level = 1; level <= K; ++level)
            if (!covered[k][level] && element_covers(family, k, level, j, l)) ++gain;
        if (gain == 0) continue;
        long long cost = l - selected[j];
        // maximize gain/cost; ties to cheaper, then smaller (j, l)
        bool take = best_j < 0 || gain * best_cost > best_gain * cost ||
                    (gain * best_cost == best_gain * cost &&
                     (cost < best_cost || (cost == best_cost && (j < best_j ||
                      (j == best_j && l < best_l)))));
        if (take) {
          best_j = j;
          best_l = l;
          best_gain = gain;
          best_cost = cost;
        }
      }
    }
    if (best_j < 0) throw ValidationError("covering system infeasible during greedy");
    selected[best_j] = best_l;
    for (int k = 0; k < n; ++k)
      for (int level = 1; level <= K; ++level)
        if (!covered[k][level] && element_covers(family, k, level, best_j, best_l)) {
          covered[k][level] = 1;
          --uncovered;
        }
  }
  return make_result(family, selected, "greedy");
}

OptimizerResult brute_force_optimal(const InstanceFamily& family, const BruteForceCaps& caps) {
  const int K = family.level_count();
  const int n = family.instance_count();
  if (K > caps.max_levels || family.m > caps.max_m || n > caps.max_instances)
    throw RangeError("brute force caps exceeded (K <= " + std::to_string(caps.max_levels) +
                     ", m <= " + std::to_string(caps.max_m) +
                     ", n <= " + std::to_string(caps.max_instances) + ")");

  RepsVector reps(K, 0), best_reps(K, 0);
  double best_score = -1.0;
  long long best_len = 0;
  // lexicographic enumeration of every vector with sum <= m; the first hit
  // wins ties, which is exactly the lexicographically smallest optimum
  auto evaluate = [&](long long used) {
    std::vector<int> levels = final_levels(family, reps);
    double score = 0.0;
    for (int k = 0; k < n; ++k) score += family.msgs[k].scores()[levels[k]];
    score /= n;
    if (score > best_score || (score == best_score && used < best_len)) {
      best_score = score;
      best_len = used;
      best_reps = reps;
    }
  };
  std::function<void(int, long long)> enumerate = [&](int j, long long used) {
    if (j == K) {
      evaluate(used);
      return;
    }
    for (long long r = 0; used + r <= family.m; ++r) {
      reps[j] = r;
      enumerate(j + 1, used + r);
    }
    reps[j] = 0;
  };
  enumerate(0, 0);
  return make_result(family, best_reps, "brute");
}

InstanceFamily load_family(const std::string& json_text) {
  json j = json::parse(json_text);
  long long m = j.at("m").get<long long>();
  std::vector<MonotoneStationaryGraph> msgs;
  // edges longer than m stay in the model; every optimizer treats them as
  // unusable within the budget
  for (const auto& inst : j.at("instances")) msgs.push_back(load_msg(inst.dump()));
  return InstanceFamily(std::move(msgs), m);
}

std::string save_family(const InstanceFamily& family) {
  json j;
  j["m"] = family.m;
  j["instances"] = json::array();
  for (const auto& msg : family.msgs) j["instances"].push_back(json::parse(save_msg(msg)));
  return j.dump(2);
}

std::string save_result(const OptimizerResult& result) {
  json j;
  j["method"] = result.method;
  j["schedule"] = json::parse(save_schedule(result.schedule));
  j["length"] = result.length;
  j["per_instance_scores"] = json::array();
  for (double s : result.per_instance_scores)
    j["per_instance_scores"].push_back(round12(s));
  j["avg_score"] = round12(result.avg_score);
  if (result.seed) j["seed"] = *result.seed;
  if (result.expected_length_bound > 0.0)
    j["expected_length_bound"] = round12(result.expected_length_bound);
  if (!result.acceptable.empty()) {
    j["acceptable"] = json::array();
    for (char a : result.acceptable) j["acceptable"].push_back(a != 0);
  }
  return j.dump(2);
}

}  // namespace coolsched
