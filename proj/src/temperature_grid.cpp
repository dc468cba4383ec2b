#include "coolsched/temperature_grid.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace coolsched {

using nlohmann::json;

std::string to_string(GridKind kind) {
  switch (kind) {
    case GridKind::kFine: return "fine";
    case GridKind::kGeometric: return "geometric";
    case GridKind::kCoarse: return "coarse";
  }
  return "?";
}

double TemperatureGrid::snap_down(double t) const {
  if (t == kInfTemp) return has_inf() ? kInfTemp : temps.back();
  if (t < temps.front())
    throw RangeError("temperature " + std::to_string(t) + " is below the grid minimum " +
                     std::to_string(temps.front()));
  auto it = std::upper_bound(temps.begin(), temps.end(), t);
  return *(it - 1);
}

namespace {

// merge tolerance sits well above ulp noise (coinciding T_j entries computed
// through different formulas) and well below any genuinely distinct pair
void sort_and_merge(std::vector<double>& temps) {
  std::sort(temps.begin(), temps.end());
  std::vector<double> merged;
  for (double t : temps) {
    if (merged.empty() || t - merged.back() > 1e-14 * merged.back()) {
      merged.push_back(t);
    }
  }
  temps.swap(merged);
}

TemperatureGrid grid_from_index_set(const std::vector<double>& js, long long e_max, double delta,
                                    GridKind kind, std::size_t size_cap) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must be in (0,1)");
  if (e_max < 1) throw ValidationError("e_max must be >= 1");
  const long long imax = static_cast<long long>(std::ceil(1.0 / delta)) - 1;
  const std::size_t predicted = js.size() * static_cast<std::size_t>(imax) + 1;
  if (predicted > size_cap)
    throw RangeError("grid would hold up to " + std::to_string(predicted) +
                     " temperatures, over the cap of " + std::to_string(size_cap) +
                     "; raise the cap or use a coarser construction");
  TemperatureGrid grid;
  grid.kind = kind;
  grid.delta = delta;
  grid.e_max = e_max;
  for (double j : js) {
    for (long long i = 1; i <= imax; ++i) {
      double target = static_cast<double>(i) * delta;
      if (target >= 1.0) break;
      grid.temps.push_back(j / std::log(1.0 / target));
    }
  }
  sort_and_merge(grid.temps);
  grid.temps.push_back(kInfTemp);  // the i*delta = 1 endpoint
  return grid;
}

}  // namespace

TemperatureGrid fine_grid(long long e_max, double delta, std::size_t size_cap) {
  std::vector<double> js;
  for (long long j = 1; j <= e_max; ++j) js.push_back(static_cast<double>(j));
  return grid_from_index_set(js, e_max, delta, GridKind::kFine, size_cap);
}

TemperatureGrid geometric_grid(long long e_max, double delta, std::size_t size_cap) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must be in (0,1)");
  std::vector<double> js;
  const double em = static_cast<double>(e_max);
  for (double j = 1.0; j < em; j *= 1.0 + delta) js.push_back(j);
  js.push_back(em);
  return grid_from_index_set(js, e_max, delta, GridKind::kGeometric, size_cap);
}

TemperatureGrid coarse_grid(long long m, double epsilon, double t_min, double t_max) {
  if (m < 2) throw ValidationError("coarse grid needs m >= 2");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ValidationError("epsilon must be in (0,1]");
  if (!(0.0 < t_min && t_min < t_max)) throw ValidationError("need 0 < t_min < t_max");
  TemperatureGrid grid;
  grid.kind = GridKind::kCoarse;
  grid.epsilon = epsilon;
  grid.m = m;
  grid.t_min = t_min;
  grid.t_max = t_max;
  grid.ratio = 1.0 + epsilon / (std::sqrt(static_cast<double>(m)) * 4.0 *
                                std::log(static_cast<double>(m)));
  double t = t_min;
  grid.temps.push_back(t);
  while (grid.temps.back() < t_max) {
    t *= grid.ratio;
    grid.temps.push_back(t);
  }
  return grid;
}

CoolingSchedule snap(const CoolingSchedule& schedule, const TemperatureGrid& grid) {
  std::vector<double> snapped;
  snapped.reserve(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    try {
      snapped.push_back(grid.snap_down(schedule[i]));
    } catch (const RangeError&) {
      throw RangeError("schedule temperature at index " + std::to_string(i) + " (" +
                       std::to_string(schedule[i]) + ") is below the grid minimum");
    }
  }
  return CoolingSchedule(std::move(snapped));
}

void default_coarse_range(long long e_max, double* t_min, double* t_max) {
  const double delta0 = 0.01;
  *t_min = 1.0 / std::log(1.0 / delta0);
  *t_max = static_cast<double>(e_max) / std::log(1.0 / (1.0 - delta0));
}

std::string save_grid(const TemperatureGrid& grid) {
  json j;
  j["kind"] = to_string(grid.kind);
  json params = json::object();
  if (grid.kind == GridKind::kCoarse) {
    params["epsilon"] = grid.epsilon;
    params["m"] = grid.m;
    params["t_min"] = grid.t_min;
    params["t_max"] = grid.t_max;
    params["ratio"] = grid.ratio;
  } else {
    params["delta"] = grid.delta;
    params["e_max"] = grid.e_max;
  }
  j["params"] = params;
  j["temps"] = json::array();
  for (double t : grid.temps) j["temps"].push_back(t == kInfTemp ? json("inf") : json(t));
  return j.dump(2);
}

TemperatureGrid load_grid(const std::string& json_text) {
  json j = json::parse(json_text);
  std::string kind = j.at("kind").get<std::string>();
  TemperatureGrid grid;
  if (kind == "fine") grid.kind = GridKind::kFine;
  else if (kind == "geometric") grid.kind = GridKind::kGeometric;
  else if (kind == "coarse") grid.kind = GridKind::kCoarse;
  else throw ValidationError("unknown grid kind '" + kind + "'");
  const auto& params = j.at("params");
  if (grid.kind == GridKind::kCoarse) {
    grid.epsilon = params.at("epsilon").get<double>();
    grid.m = params.at("m").get<long long>();
    grid.t_min = params.at("t_min").get<double>();
    grid.t_max = params.at("t_max").get<double>();
    grid.ratio = params.at("ratio").get<double>();
  } else {
    grid.delta = params.at("delta").get<double>();
    grid.e_max = params.at("e_max").get<long long>();
  }
  for (const auto& v : j.at("temps")) {
    grid.temps.push_back(v.is_string() ? kInfTemp : v.get<double>());
  }
  if (grid.temps.empty()) throw ValidationError("grid has no temperatures");
  for (std::size_t i = 0; i + 1 < grid.temps.size(); ++i)
    if (!(grid.temps[i] < grid.temps[i + 1]))
      throw ValidationError("grid temperatures must be strictly increasing");
  if (!(grid.temps.front() > 0.0)) throw ValidationError("grid temperatures must be positive");
  return grid;
}

}  // namespace coolsched
