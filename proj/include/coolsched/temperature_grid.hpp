#ifndef COOLSCHED_TEMPERATURE_GRID_HPP
#define COOLSCHED_TEMPERATURE_GRID_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "coolsched/search_graph.hpp"

namespace coolsched {

enum class GridKind { kFine, kGeometric, kCoarse };

std::string to_string(GridKind kind);

/// Finite discretized temperature set. temps is sorted strictly increasing;
/// fine/geometric grids end with the kInfTemp sentinel (the i*delta = 1
/// endpoint of the per-energy construction).
struct TemperatureGrid {
  GridKind kind = GridKind::kFine;
  std::vector<double> temps;

  // construction parameters, by kind
  double delta = 0.0;            // fine, geometric
  long long e_max = 0;           // fine, geometric
  double epsilon = 0.0;          // coarse
  long long m = 0;               // coarse
  double t_min = 0.0, t_max = 0.0;  // coarse
  double ratio = 0.0;            // coarse: 1 + epsilon * m^(-1/2) / (4 ln m)

  std::size_t size() const { return temps.size(); }
  bool has_inf() const { return !temps.empty() && temps.back() == kInfTemp; }
  double min_temp() const { return temps.front(); }

  /// Largest grid element <= t (kInfTemp maps to the inf sentinel when
  /// present, else to the largest finite element). Throws RangeError when t
  /// is below the grid minimum.
  double snap_down(double t) const;
};

inline constexpr std::size_t kDefaultGridCap = 4'000'000;

/// Union over j = 1..e_max of T_j = { j / ln(1/(i delta)) : i = 1..ceil(1/delta)-1 }
/// plus the inf sentinel, duplicates merged. For every j and target i*delta < 1
/// there is a grid t with e^(-j/t) = i*delta exactly.
TemperatureGrid fine_grid(long long e_max, double delta, std::size_t size_cap = kDefaultGridCap);

/// Same construction but j ranges over the geometric index set
/// J = {1, (1+delta), (1+delta)^2, ...} capped to include e_max; exponentially
/// smaller than the fine grid in e_max, with an O(delta) net guarantee.
TemperatureGrid geometric_grid(long long e_max, double delta,
                               std::size_t size_cap = kDefaultGridCap);

/// Geometric sequence t_min * ratio^k covering [t_min, t_max] with
/// ratio = 1 + epsilon * m^(-1/2) / (4 ln m).
TemperatureGrid coarse_grid(long long m, double epsilon, double t_min, double t_max);

/// Elementwise snap-down of a schedule onto the grid; stays non-increasing.
CoolingSchedule snap(const CoolingSchedule& schedule, const TemperatureGrid& grid);

/// The CLI's default coarse-grid range: acceptance probabilities at
/// delta_e in {1..e_max} span [delta0, 1-delta0] with delta0 = 0.01.
void default_coarse_range(long long e_max, double* t_min, double* t_max);

std::string save_grid(const TemperatureGrid& grid);
TemperatureGrid load_grid(const std::string& json_text);

}  // namespace coolsched

#endif
