#ifndef COOLSCHED_INEQUALITIES_HPP
#define COOLSCHED_INEQUALITIES_HPP

#include <cstdint>
#include <vector>

#include "coolsched/common.hpp"

namespace coolsched {

inline constexpr double kIneqSlack = 1e-12;

/// The deviation function f(x) = x - x^2 on [0,1].
double deviation(double x);

/// p f(x) + (1-p) f(y) <= f(px + (1-p)y) - min{p,1-p} (x-y)^2, as stated.
/// This is stronger than the underlying algebraic identity and fails off the
/// boundary; callers should consult two_point_identity_residual for ground truth.
bool check_two_point_bound(double p, double x, double y);

/// |p f(x) + (1-p) f(y) - [f(px + (1-p)y) - (p - p^2)(x-y)^2]|; this is the
/// exact algebraic expansion, so the residual vanishes up to rounding.
double two_point_identity_residual(double p, double x, double y);

/// Bound with the exact (p - p^2) factor in place of min{p,1-p}.
bool check_two_point_exact(double p, double x, double y);

/// sum p_i f(x_i) <= f(sum p_i x_i) for a probability vector p.
bool check_jensen(const std::vector<double>& ps, const std::vector<double>& xs);

/// |x - y| >= |f(x) - f(y)|.
bool check_lipschitz(double x, double y);

/// p - p^(1+x) <= x for p in [0,1], x >= 0.
bool check_power_drop(double p, double x);

/// p - p^(1+x) <= max{ln(1/p), 1} min{p, 1-p} x for p in (0,1), x in [0,1].
bool check_power_drop_weighted(double p, double x);

/// Parameters of the +1/0/-1 random walk.
struct WalkParams {
  double p_b = 1.0 / 3.0;  // step down
  double p_s = 1.0 / 3.0;  // stay
  double p_f = 1.0 / 3.0;  // step up
  long long k = 1;         // step count

  void validate_or_throw() const;
};

/// Empirical distribution of max_{i<=k} x_i over seeded trials.
class WalkMaxStats {
 public:
  WalkMaxStats(std::vector<long long> maxima, WalkParams params);

  long long trials() const { return static_cast<long long>(maxima_.size()); }
  const WalkParams& params() const { return params_; }

  /// Fraction of trials with max >= threshold (nonincreasing in threshold).
  double freq_at_least(double threshold) const;
  /// Empirical q-quantile of the max, q in [0,1].
  long long quantile(double q) const;

  // reach / cap / biased threshold frequencies
  double freq_item_reach(double c) const;               // max >= sqrt(k/c) + 2
  double freq_item_cap(double c) const;                 // max >= sqrt(c k) ln k
  double freq_item_biased(long long k_prime) const;     // max >= sqrt(k')/2

 private:
  std::vector<long long> maxima_;  // sorted ascending
  WalkParams params_;
};

/// Runs `trials` seeded walks (trial i uses SplitMix64::split_seed(seed, i)).
WalkMaxStats walk_max_stats(const WalkParams& params, long long trials, std::uint64_t seed,
                            int threads = 1);

}  // namespace coolsched

#endif
