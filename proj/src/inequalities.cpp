#include "coolsched/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "coolsched/rng.hpp"

namespace coolsched {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw ValidationError(std::string(name) + " must lie in [0,1]");
}

}  // namespace

double deviation(double x) {
  require_unit(x, "x");
  return x - x * x;
}

bool check_two_point_bound(double p, double x, double y) {
  require_unit(p, "p");
  require_unit(x, "x");
  require_unit(y, "y");
  double lhs = p * deviation(x) + (1.0 - p) * deviation(y);
  double rhs = deviation(p * x + (1.0 - p) * y) - std::min(p, 1.0 - p) * (x - y) * (x - y);
  return lhs <= rhs + kIneqSlack;
}

double two_point_identity_residual(double p, double x, double y) {
  require_unit(p, "p");
  require_unit(x, "x");
  require_unit(y, "y");
  double lhs = p * deviation(x) + (1.0 - p) * deviation(y);
  double rhs = deviation(p * x + (1.0 - p) * y) - (p - p * p) * (x - y) * (x - y);
  return std::fabs(lhs - rhs);
}

bool check_two_point_exact(double p, double x, double y) {
  require_unit(p, "p");
  require_unit(x, "x");
  require_unit(y, "y");
  double lhs = p * deviation(x) + (1.0 - p) * deviation(y);
  double rhs = deviation(p * x + (1.0 - p) * y) - (p - p * p) * (x - y) * (x - y);
  return lhs <= rhs + kIneqSlack;
}

bool check_jensen(const std::vector<double>& ps, const std::vector<double>& xs) {
  if (ps.size() != xs.size()) throw ValidationError("ps and xs must have equal length");
  double sum_p = 0.0, lhs = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i] < 0.0) throw ValidationError("probabilities must be nonnegative");
    require_unit(xs[i], "x_i");
    sum_p += ps[i];
    lhs += ps[i] * deviation(xs[i]);
    mean += ps[i] * xs[i];
  }
  if (std::fabs(sum_p - 1.0) > 1e-9) throw ValidationError("probabilities must sum to 1");
  mean = std::clamp(mean, 0.0, 1.0);
  return lhs <= deviation(mean) + kIneqSlack;
}

bool check_lipschitz(double x, double y) {
  require_unit(x, "x");
  require_unit(y, "y");
  return std::fabs(x - y) + kIneqSlack >= std::fabs(deviation(x) - deviation(y));
}

bool check_power_drop(double p, double x) {
  require_unit(p, "p");
  if (x < 0.0) throw ValidationError("x must be nonnegative");
  return p - std::pow(p, 1.0 + x) <= x + kIneqSlack;
}

bool check_power_drop_weighted(double p, double x) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("p must lie in (0,1)");
  require_unit(x, "x");
  double lhs = p - std::pow(p, 1.0 + x);
  double rhs = std::max(std::log(1.0 / p), 1.0) * std::min(p, 1.0 - p) * x;
  return lhs <= rhs + kIneqSlack;
}

void WalkParams::validate_or_throw() const {
  if (p_b < 0.0 || p_s < 0.0 || p_f < 0.0)
    throw ValidationError("walk probabilities must be nonnegative");
  if (std::fabs(p_b + p_s + p_f - 1.0) > 1e-12)
    throw ValidationError("walk probabilities must sum to 1");
  if (k < 1) throw ValidationError("walk step count must be positive");
}

WalkMaxStats::WalkMaxStats(std::vector<long long> maxima, WalkParams params)
    : maxima_(std::move(maxima)), params_(params) {
  std::sort(maxima_.begin(), maxima_.end());
}

double WalkMaxStats::freq_at_least(double threshold) const {
  auto it = std::lower_bound(maxima_.begin(), maxima_.end(),
                             static_cast<long long>(std::ceil(threshold)));
  return static_cast<double>(maxima_.end() - it) / static_cast<double>(maxima_.size());
}

long long WalkMaxStats::quantile(double q) const {
  require_unit(q, "q");
  std::size_t idx = static_cast<std::size_t>(q * (maxima_.size() - 1));
  return maxima_[idx];
}

double WalkMaxStats::freq_item_reach(double c) const {
  return freq_at_least(std::sqrt(static_cast<double>(params_.k) / c) + 2.0);
}

double WalkMaxStats::freq_item_cap(double c) const {
  double k = static_cast<double>(params_.k);
  return freq_at_least(std::sqrt(c * k) * std::log(k));
}

double WalkMaxStats::freq_item_biased(long long k_prime) const {
  return freq_at_least(std::sqrt(static_cast<double>(k_prime)) / 2.0);
}

WalkMaxStats walk_max_stats(const WalkParams& params, long long trials, std::uint64_t seed,
                            int threads) {
  params.validate_or_throw();
  if (trials < 1) throw ValidationError("walk_max_stats needs trials >= 1");

  auto run_block = [&](long long lo, long long hi) {
    std::vector<long long> maxima;
    maxima.reserve(static_cast<std::size_t>(hi - lo));
    for (long long trial = lo; trial < hi; ++trial) {
      SplitMix64 rng(SplitMix64::split_seed(seed, static_cast<std::uint64_t>(trial)));
      long long x = 0, best = 0;
      for (long long i = 0; i < params.k; ++i) {
        double u = rng.next_unit();
        if (u < params.p_b) --x;
        else if (u < params.p_b + params.p_s) { /* stay */ }
        else ++x;
        if (x > best) best = x;
      }
      maxima.push_back(best);
    }
    return maxima;
  };

  std::vector<long long> maxima;
  if (threads <= 1) {
    maxima = run_block(0, trials);
  } else {
    const long long block = (trials + threads - 1) / threads;
    std::vector<std::future<std::vector<long long>>> futs;
    for (long long lo = 0; lo < trials; lo += block)
      futs.push_back(
          std::async(std::launch::async, run_block, lo, std::min(lo + block, trials)));
    for (auto& f : futs) {
      auto part = f.get();
      maxima.insert(maxima.end(), part.begin(), part.end());
    }
  }
  return WalkMaxStats(std::move(maxima), params);
}

}  // namespace coolsched
