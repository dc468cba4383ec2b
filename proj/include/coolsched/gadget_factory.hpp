#ifndef COOLSCHED_GADGET_FACTORY_HPP
#define COOLSCHED_GADGET_FACTORY_HPP

#include <cstdint>
#include <vector>

#include "coolsched/search_graph.hpp"

namespace coolsched {

/// Parameters of one lower-bound gadget. tau is derived from the integer
/// energy step x as x / ln 2, so a downhill move of x at temperature tau is
/// accepted with probability exactly 1/2.
struct GadgetSpec {
  long long x = 1;        // positive integer energy step
  double tau = 0.0;       // x / ln 2
  long long m_prime = 9;  // key scale; width = ceil(sqrt(m_prime))
  long long c = 100;      // walk constant
  int width = 3;

  long long key_length() const { return 2 * c * m_prime; }
};

/// Throws ValidationError when the derived width is below 3.
GadgetSpec make_gadget_spec(long long x, long long m_prime, long long c);

/// Two mirrored energy ramps of `width` nodes each, joined tip to tip, with
/// an initial dummy feeding the upper ramp and a final dummy (the only
/// solution, absorbing) fed by the lower ramp. Interior nodes carry two
/// back-edges and one forward edge, so at temperature tau the walk moves
/// forward / back / stays with probability 1/3 each.
SearchGraph build_gadget(const GadgetSpec& spec);

/// The key K(tau): 2 c m' copies of tau.
CoolingSchedule build_key(const GadgetSpec& spec);
RunLengthSchedule build_key_runs(const GadgetSpec& spec);

/// Exact success probability of the worst schedule allowed by the far-
/// temperature bound: m - m'/(4c ln^2 m') copies of
/// tau (sqrt(m') + c^2 ln m') / sqrt(m') followed by the remainder at tau.
double far_schedule_failure(const GadgetSpec& spec, long long m);

/// The hard instance family of the sample-complexity lower bound.
struct HardFamily {
  std::vector<GadgetSpec> specs;       // all l gadgets, tau_1 < ... < tau_l
  std::vector<int> support;            // indices of the sampled subset L_D
  RunLengthSchedule master;            // all support keys, non-increasing
  long long m = 0;
};

/// Builds all l gadgets with the x-recurrence
/// x_i = ceil(x_{i-1} (sqrt(m') + 10 c^2 ln m') / sqrt(m') + 1), samples
/// `support_size` of them with the given seed, and concatenates their keys.
/// m' is derived as floor(m / (2 c support_size)) so the master schedule fits
/// the budget m.
HardFamily build_hard_family(long long m, long long c, int l, int support_size,
                             std::uint64_t seed);

}  // namespace coolsched

#endif
