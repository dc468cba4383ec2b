#include "coolsched/convergence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "coolsched/rng.hpp"

namespace coolsched {

Metric metric_from_string(const std::string& s) {
  if (s == "l1" || s == "L1") return Metric::kL1;
  if (s == "l2" || s == "L2") return Metric::kL2;
  throw ValidationError("unknown metric '" + s + "' (use l1 or l2)");
}

std::string to_string(Metric metric) { return metric == Metric::kL1 ? "l1" : "l2"; }

std::vector<std::vector<double>> transition_matrix(const SearchGraph& g, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("p must lie in (0,1)");
  const int n = g.node_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u) {
    if (g.out[u].empty()) {
      m[u][u] = 1.0;
      continue;
    }
    double stay = 1.0;
    const double per_edge = 1.0 / static_cast<double>(g.out[u].size());
    for (int v : g.out[u]) {
      double a = g.energy[v] >= g.energy[u] ? 1.0 : p;
      m[u][v] += per_edge * a;
      stay -= per_edge * a;
    }
    m[u][u] += stay;
  }
  return m;
}

PChain make_chain(const SearchGraph& g, double p) { return PChain{p, transition_matrix(g, p)}; }

namespace {

std::vector<double> apply_chain(const PChain& chain, const std::vector<double>& dist) {
  const int n = chain.size();
  std::vector<double> next(n, 0.0);
  for (int u = 0; u < n; ++u) {
    const double mass = dist[u];
    if (mass == 0.0) continue;
    const auto& row = chain.matrix[u];
    for (int v = 0; v < n; ++v) next[v] += mass * row[v];
  }
  return next;
}

}  // namespace

std::vector<double> stationary(const PChain& chain, double tol, bool lazy, long long cap) {
  PChain work = chain;
  if (lazy) {
    const int n = chain.size();
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) work.matrix[u][v] *= 0.5;
      work.matrix[u][u] += 0.5;
    }
  }
  const int n = work.size();
  std::vector<double> pi(n, 1.0 / n);
  for (long long it = 0; it < cap; ++it) {
    std::vector<double> next = apply_chain(work, pi);
    double change = 0.0;
    for (int i = 0; i < n; ++i) change += std::fabs(next[i] - pi[i]);
    pi.swap(next);
    if (change < tol) return pi;
  }
  throw RangeError("power iteration did not converge within " + std::to_string(cap) +
                   " steps; try the lazy adjustment");
}

double distribution_distance(const std::vector<double>& a, const std::vector<double>& b,
                             Metric metric) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    acc += metric == Metric::kL1 ? std::fabs(d) : d * d;
  }
  return metric == Metric::kL1 ? acc : std::sqrt(acc);
}

ConvergenceTrace steps_to_target(const std::vector<double>& start,
                                 const std::vector<double>& target, const PChain& chain,
                                 Metric metric, double tol, long long cap) {
  ConvergenceTrace trace;
  std::vector<double> cur = start;
  if (distribution_distance(cur, target, metric) < tol) return trace;
  for (long long s = 1; s <= cap; ++s) {
    cur = apply_chain(chain, cur);
    double d = distribution_distance(cur, target, metric);
    trace.distances.push_back(d);
    if (d < tol) {
      trace.steps = s;
      return trace;
    }
  }
  throw RangeError("no convergence to the target within " + std::to_string(cap) + " steps");
}

ProbeResult monotonicity_probe(const SearchGraph& g, double p_low, double p_mid, double p_high,
                               Metric metric, double tol) {
  if (!(p_low < p_mid && p_mid < p_high))
    throw ValidationError("need p_low < p_mid < p_high");
  PChain low = make_chain(g, p_low);
  std::vector<double> target = stationary(low);
  std::vector<double> from_mid = stationary(make_chain(g, p_mid));
  std::vector<double> from_high = stationary(make_chain(g, p_high));

  ProbeResult res;
  res.trace_high = steps_to_target(from_high, target, low, metric, tol);
  res.trace_mid = steps_to_target(from_mid, target, low, metric, tol);
  res.steps_high = res.trace_high.steps;
  res.steps_mid = res.trace_mid.steps;
  res.violation = res.steps_high < res.steps_mid;
  return res;
}

namespace {

SearchGraph random_candidate(int node_count, SplitMix64& rng) {
  SearchGraph g;
  for (int i = 0; i < node_count; ++i) {
    g.ids.push_back("n" + std::to_string(i));
    g.energy.push_back(1 + static_cast<long long>(rng.next_below(2)));  // two score levels
  }
  g.e_max = 2;
  g.out.assign(node_count, {});
  for (int i = 0; i < node_count; ++i) {
    int degree = 1 + static_cast<int>(rng.next_below(3));
    for (int e = 0; e < degree; ++e)
      g.out[i].push_back(static_cast<int>(rng.next_below(node_count)));
  }
  g.solution.assign(node_count, 0);
  g.uniform_initial = true;
  g.initial.assign(node_count, 1.0 / node_count);
  return g;
}

}  // namespace

std::optional<CounterexampleResult> search_counterexample(int node_count, Metric metric,
                                                          double p_low, double p_mid,
                                                          double p_high, std::uint64_t seed,
                                                          long long budget, int threads) {
  if (node_count < 4) throw ValidationError("the search needs at least 4 nodes");

  auto probe_candidate = [&](long long cand) -> std::optional<CounterexampleResult> {
    SplitMix64 rng(SplitMix64::split_seed(seed, static_cast<std::uint64_t>(cand)));
    SearchGraph g = random_candidate(node_count, rng);
    try {
      ProbeResult probe = monotonicity_probe(g, p_low, p_mid, p_high, metric);
      if (probe.violation) return CounterexampleResult{std::move(g), std::move(probe), cand};
    } catch (const RangeError&) {
      // periodic or slow-mixing candidate; skip it
    }
    return std::nullopt;
  };

  if (threads <= 1) {
    for (long long cand = 0; cand < budget; ++cand)
      if (auto hit = probe_candidate(cand)) return hit;
    return std::nullopt;
  }

  // block-parallel scan; the lowest candidate index wins, so the result is
  // identical to the sequential one
  const long long block = 64;
  for (long long base = 0; base < budget; base += block * threads) {
    std::vector<std::future<std::optional<CounterexampleResult>>> futs;
    for (int t = 0; t < threads; ++t) {
      long long lo = base + t * block;
      long long hi = std::min(lo + block, budget);
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
        for (long long cand = lo; cand < hi; ++cand)
          if (auto hit = probe_candidate(cand)) return hit;
        return std::optional<CounterexampleResult>{};
      }));
    }
    std::optional<CounterexampleResult> best;
    for (auto& f : futs) {
      auto hit = f.get();
      if (hit && (!best || hit->candidate_index < best->candidate_index)) best = hit;
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace coolsched
