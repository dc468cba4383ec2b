#include "coolsched/gadget_factory.hpp"

#include <algorithm>
#include <cmath>

#include "coolsched/rng.hpp"
#include "coolsched/sa_engine.hpp"

namespace coolsched {

GadgetSpec make_gadget_spec(long long x, long long m_prime, long long c) {
  if (x < 1) throw ValidationError("the energy step x must be a positive integer");
  if (c < 1) throw ValidationError("the walk constant c must be positive");
  GadgetSpec spec;
  spec.x = x;
  spec.tau = static_cast<double>(x) / std::log(2.0);
  spec.m_prime = m_prime;
  spec.c = c;
  spec.width = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m_prime))));
  if (spec.width < 3)
    throw ValidationError("gadget width ceil(sqrt(m')) must be at least 3");
  return spec;
}

SearchGraph build_gadget(const GadgetSpec& spec) {
  const int w = spec.width;
  const long long x = spec.x;
  SearchGraph g;
  const int n = 2 * w + 2;
  g.ids.reserve(n);
  // node order: initial dummy, upper path 1..w, lower path 1..w, final dummy
  g.ids.push_back("start");
  for (int i = 1; i <= w; ++i) g.ids.push_back("up" + std::to_string(i));
  for (int i = 1; i <= w; ++i) g.ids.push_back("low" + std::to_string(i));
  g.ids.push_back("final");

  auto up = [&](int i) { return i; };
  auto low = [&](int i) { return w + i; };
  const int start = 0, final_node = 2 * w + 1;

  // ramp energies: 1, x+1, 2x+1, ..., (w-2)x+1, wx+1 (the +1 keeps every
  // energy positive)
  auto ramp_energy = [&](int i) -> long long {
    if (i == 1) return 1;
    if (i == w) return static_cast<long long>(w) * x + 1;
    return static_cast<long long>(i - 1) * x + 1;
  };
  g.energy.assign(n, 1);
  for (int i = 1; i <= w; ++i) {
    g.energy[up(i)] = ramp_energy(i);
    g.energy[low(i)] = ramp_energy(i);
  }
  g.e_max = static_cast<long long>(w) * x + 1;

  g.out.assign(n, {});
  g.out[start] = {up(1)};
  g.out[up(1)] = {up(2)};
  for (int i = 2; i <= w - 1; ++i) g.out[up(i)] = {up(i - 1), up(i - 1), up(i + 1)};
  g.out[up(w)] = {up(w - 1), up(w - 1), low(w)};
  g.out[low(w)] = {low(w - 1), low(w - 1)};
  for (int i = 2; i <= w - 1; ++i) g.out[low(i)] = {low(i - 1), low(i - 1), low(i + 1)};
  g.out[low(1)] = {low(2), final_node};
  // final dummy is absorbing (no out-edges)

  g.solution.assign(n, 0);
  g.solution[final_node] = 1;
  g.initial.assign(n, 0.0);
  g.initial[start] = 1.0;
  return g;
}

CoolingSchedule build_key(const GadgetSpec& spec) { return build_key_runs(spec).expand(); }

RunLengthSchedule build_key_runs(const GadgetSpec& spec) {
  RunLengthSchedule key;
  key.runs.push_back({spec.tau, spec.key_length()});
  return key;
}

double far_schedule_failure(const GadgetSpec& spec, long long m) {
  if (m < spec.key_length())
    throw ValidationError("the far-schedule bound needs m >= 2 c m'");
  const double mp = static_cast<double>(spec.m_prime);
  const double lm = std::log(mp);
  const long long near_count =
      static_cast<long long>(std::floor(mp / (4.0 * static_cast<double>(spec.c) * lm * lm)));
  const double t_far =
      spec.tau * (std::sqrt(mp) + static_cast<double>(spec.c) * spec.c * lm) / std::sqrt(mp);

  RunLengthSchedule schedule;
  if (m - near_count > 0) schedule.runs.push_back({t_far, m - near_count});
  if (near_count > 0) schedule.runs.push_back({spec.tau, near_count});
  return exact_score(build_gadget(spec), schedule.expand(), ScoreMode::kAbsorbing);
}

HardFamily build_hard_family(long long m, long long c, int l, int support_size,
                             std::uint64_t seed) {
  if (l < 1 || support_size < 1 || support_size > l)
    throw ValidationError("need 1 <= support_size <= l");
  const long long m_prime = m / (2 * c * support_size);
  if (m_prime < 9)
    throw ValidationError("budget too small: derived m' = " + std::to_string(m_prime) +
                          " leaves no usable gadget width");

  HardFamily family;
  family.m = m;
  const double mp = static_cast<double>(m_prime);
  const double factor =
      (std::sqrt(mp) + 10.0 * static_cast<double>(c) * c * std::log(mp)) / std::sqrt(mp);
  long long x = 1;
  for (int i = 0; i < l; ++i) {
    family.specs.push_back(make_gadget_spec(x, m_prime, c));
    x = static_cast<long long>(std::ceil(static_cast<double>(x) * factor + 1.0));
  }

  // sample the support without replacement
  SplitMix64 rng(seed);
  std::vector<int> pool(l);
  for (int i = 0; i < l; ++i) pool[i] = i;
  for (int i = 0; i < support_size; ++i) {
    int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(l - i)));
    std::swap(pool[i], pool[j]);
  }
  family.support.assign(pool.begin(), pool.begin() + support_size);
  std::sort(family.support.begin(), family.support.end());

  // keys sorted non-increasingly: highest tau (largest index) first
  for (auto it = family.support.rbegin(); it != family.support.rend(); ++it)
    family.master.runs.push_back({family.specs[*it].tau, family.specs[*it].key_length()});
  return family;
}

}  // namespace coolsched
