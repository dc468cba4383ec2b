#ifndef COOLSCHED_CONVERGENCE_LAB_HPP
#define COOLSCHED_CONVERGENCE_LAB_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "coolsched/search_graph.hpp"

namespace coolsched {

enum class Metric { kL1, kL2 };

Metric metric_from_string(const std::string& s);
std::string to_string(Metric metric);

/// Fixed-acceptance-probability chain: node energies act as the scores;
/// every non-decreasing move is performed, score-decreasing moves
/// with probability p.
struct PChain {
  double p = 0.5;
  std::vector<std::vector<double>> matrix;  // row-stochastic

  int size() const { return static_cast<int>(matrix.size()); }
};

std::vector<std::vector<double>> transition_matrix(const SearchGraph& g, double p);
PChain make_chain(const SearchGraph& g, double p);

inline constexpr long long kPowerIterationCap = 1'000'000;

/// Power iteration from uniform until the successive L1 change drops below
/// tol. lazy mixes in a half self-loop first (use it when the plain chain is
/// periodic). Throws RangeError when the cap is hit.
std::vector<double> stationary(const PChain& chain, double tol = 1e-12, bool lazy = false,
                               long long cap = kPowerIterationCap);

double distribution_distance(const std::vector<double>& a, const std::vector<double>& b,
                             Metric metric);

struct ConvergenceTrace {
  long long steps = 0;
  std::vector<double> distances;  // distance to target after each step
};

/// Applies the chain to `start` until distance(current, target) < tol.
ConvergenceTrace steps_to_target(const std::vector<double>& start,
                                 const std::vector<double>& target, const PChain& chain,
                                 Metric metric, double tol = 1e-4, long long cap = 100000);

struct ProbeResult {
  long long steps_high = 0;
  long long steps_mid = 0;
  bool violation = false;
  ConvergenceTrace trace_high;
  ConvergenceTrace trace_mid;
};

/// Compares convergence toward stationary(p_low) from stationary(p_high)
/// versus stationary(p_mid); a violation means the farther start is faster.
ProbeResult monotonicity_probe(const SearchGraph& g, double p_low, double p_mid, double p_high,
                               Metric metric, double tol = 1e-4);

struct CounterexampleResult {
  SearchGraph graph;
  ProbeResult probe;
  long long candidate_index = 0;
};

/// Seeded random search over small score-labelled digraphs; returns the first
/// graph whose probe reports a violation, or nullopt when the budget runs
/// out. With threads > 1 candidates are probed in parallel blocks and the
/// lowest candidate index wins, so the result matches the sequential scan.
std::optional<CounterexampleResult> search_counterexample(int node_count, Metric metric,
                                                          double p_low, double p_mid,
                                                          double p_high, std::uint64_t seed,
                                                          long long budget, int threads = 1);

}  // namespace coolsched

#endif
