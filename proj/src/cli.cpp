#include "coolsched/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "coolsched/convergence_lab.hpp"
#include "coolsched/gadget_factory.hpp"
#include "coolsched/graph_learner.hpp"
#include "coolsched/inequalities.hpp"
#include "coolsched/rng.hpp"
#include "coolsched/sa_engine.hpp"
#include "coolsched/schedule_optimizer.hpp"
#include "coolsched/stationary_model.hpp"
#include "coolsched/temperature_grid.hpp"

namespace coolsched {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + out_path + "'");
  out << payload;
}

json rounded(const json& j) {
  if (j.is_number_float()) return json(round12(j.get<double>()));
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(rounded(v));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

std::string dump(const json& j) { return rounded(j).dump(2) + "\n"; }

std::string csv_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json trace_json(const ConvergenceTrace& trace) {
  json j;
  j["steps"] = trace.steps;
  j["distances"] = trace.distances;
  return j;
}

struct CommonOpts {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--out", opts->out, "output path ('-' = stdout)");
  cmd->add_option("--format", opts->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", opts->seed, "64-bit seed for randomized runs");
  cmd->add_option("--threads", opts->threads, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
}

// ---- simulate ----------------------------------------------------------

int cmd_simulate(const std::string& graph_path, const std::string& schedule_path,
                 long long trials, double confidence, const std::string& mode_name,
                 bool with_exact, const CommonOpts& opts) {
  SearchGraph g = load_graph(read_file(graph_path));
  CoolingSchedule schedule = load_schedule(read_file(schedule_path));
  ScoreMode mode = score_mode_from_string(mode_name);
  ScoreEstimate est =
      estimate_score(g, schedule, trials, confidence, opts.seed, mode, opts.threads);
  double exact = with_exact ? exact_score(g, schedule, mode) : 0.0;

  if (opts.format == "csv") {
    std::ostringstream os;
    os << "schedule_id,mode,trials,mean,half_width" << (with_exact ? ",exact" : "") << "\n";
    os << schedule_path << "," << to_string(mode) << "," << est.trials << ","
       << csv_num(est.mean) << "," << csv_num(est.half_width);
    if (with_exact) os << "," << csv_num(exact);
    os << "\n";
    write_output(opts.out, os.str());
  } else {
    json j;
    j["schedule_id"] = schedule_path;
    j["mode"] = to_string(mode);
    j["trials"] = est.trials;
    j["mean"] = est.mean;
    j["half_width"] = est.half_width;
    j["confidence"] = est.confidence;
    j["seed"] = opts.seed;
    if (with_exact) j["exact"] = exact;
    write_output(opts.out, dump(j));
  }
  return 0;
}

// ---- score -------------------------------------------------------------

int cmd_score(const std::string& graph_path, const std::string& schedule_path,
              const std::string& mode_name, const CommonOpts& opts) {
  SearchGraph g = load_graph(read_file(graph_path));
  CoolingSchedule schedule = load_schedule(read_file(schedule_path));
  ScoreMode mode = score_mode_from_string(mode_name);
  double score = exact_score(g, schedule, mode);
  std::cout << csv_num(round12(score)) << "\n";
  json j;
  j["score"] = score;
  j["mode"] = to_string(mode);
  j["schedule_id"] = schedule_path;
  write_output(opts.out.empty() ? "-" : opts.out, dump(j));
  return 0;
}

// ---- grid --------------------------------------------------------------

int cmd_grid(const std::string& kind, long long e_max, double delta, long long m,
             double epsilon, double t_min, double t_max, const CommonOpts& opts) {
  TemperatureGrid grid;
  if (kind == "fine") {
    grid = fine_grid(e_max, delta);
  } else if (kind == "geometric") {
    grid = geometric_grid(e_max, delta);
  } else {
    double def_min = 0.0, def_max = 0.0;
    default_coarse_range(e_max, &def_min, &def_max);
    if (t_min <= 0.0) t_min = def_min;
    if (t_max <= 0.0) t_max = def_max;
    grid = coarse_grid(m, epsilon, t_min, t_max);
  }
  if (opts.format == "csv") {
    std::ostringstream os;
    os << "temperature\n";
    for (double t : grid.temps) os << (t == kInfTemp ? "inf" : csv_num(round12(t))) << "\n";
    write_output(opts.out, os.str());
  } else {
    write_output(opts.out, rounded(json::parse(save_grid(grid))).dump(2) + "\n");
  }
  return 0;
}

// ---- props -------------------------------------------------------------

struct IneqReport {
  std::string name;
  long long checked = 0;
  long long holds = 0;
  double worst_slack = 0.0;  // most positive LHS - RHS seen
};

int cmd_props(long long samples, double lattice_step, const CommonOpts& opts) {
  std::vector<IneqReport> reports;
  SplitMix64 rng(opts.seed);

  auto tally = [](IneqReport& r, double margin) {
    ++r.checked;
    if (margin <= kIneqSlack) ++r.holds;
    r.worst_slack = std::max(r.worst_slack, margin);
  };
  auto unit_lattice = [&](auto&& body) {
    for (double v = 0.0; v <= 1.0 + 1e-12; v += lattice_step) body(std::min(v, 1.0));
  };
  // margins are LHS - RHS; positive means the inequality is violated
  auto margin_two_point_stated = [](double p, double x, double y) {
    double lhs = p * deviation(x) + (1 - p) * deviation(y);
    double rhs = deviation(p * x + (1 - p) * y) - std::min(p, 1 - p) * (x - y) * (x - y);
    return lhs - rhs;
  };
  auto margin_power_drop = [](double p, double x) { return (p - std::pow(p, 1.0 + x)) - x; };
  auto margin_power_weighted = [](double p, double x) {
    return (p - std::pow(p, 1.0 + x)) -
           std::max(std::log(1.0 / p), 1.0) * std::min(p, 1.0 - p) * x;
  };

  IneqReport stated{"two_point_stated", 0, 0, -1e300};
  IneqReport identity{"two_point_identity", 0, 0, -1e300};
  IneqReport jensen{"jensen", 0, 0, -1e300};
  IneqReport lipschitz{"lipschitz", 0, 0, -1e300};
  IneqReport power_drop{"power_drop", 0, 0, -1e300};
  IneqReport power_weighted{"power_drop_weighted", 0, 0, -1e300};

  unit_lattice([&](double p) {
    unit_lattice([&](double x) {
      unit_lattice([&](double y) {
        tally(stated, margin_two_point_stated(p, x, y));
        tally(identity, two_point_identity_residual(p, x, y));
        tally(jensen, p * deviation(x) + (1 - p) * deviation(y) -
                         deviation(p * x + (1 - p) * y));
      });
      tally(lipschitz, std::fabs(deviation(p) - deviation(x)) - std::fabs(p - x));
      if (p > 0.0 && p < 1.0) tally(power_weighted, margin_power_weighted(p, x));
    });
    for (double x = 0.0; x <= 10.0 + 1e-12; x += lattice_step)
      tally(power_drop, margin_power_drop(p, std::min(x, 10.0)));
  });
  for (long long i = 0; i < samples; ++i) {
    double p = rng.next_unit(), x = rng.next_unit(), y = rng.next_unit();
    tally(stated, margin_two_point_stated(p, x, y));
    tally(identity, two_point_identity_residual(p, x, y));
    tally(lipschitz, std::fabs(deviation(x) - deviation(y)) - std::fabs(x - y));
    tally(power_drop, margin_power_drop(p, 10.0 * x));
    if (p > 0.0 && p < 1.0) tally(power_weighted, margin_power_weighted(p, x));
    // random simplex of length 2..8 for the multi-point convexity bound
    std::size_t len = 2 + rng.next_below(7);
    std::vector<double> ps(len), xs(len);
    double total = 0.0;
    for (auto& v : ps) total += (v = -std::log(1.0 - rng.next_unit()));
    double lhs = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      ps[k] /= total;
      xs[k] = rng.next_unit();
      lhs += ps[k] * deviation(xs[k]);
      mean += ps[k] * xs[k];
    }
    tally(jensen, lhs - deviation(std::clamp(mean, 0.0, 1.0)));
  }
  reports = {stated, identity, jensen, lipschitz, power_drop, power_weighted};

  if (opts.format == "csv") {
    std::ostringstream os;
    os << "inequality,checked,holds,fails,worst_slack\n";
    for (const auto& r : reports)
      os << r.name << "," << r.checked << "," << r.holds << "," << (r.checked - r.holds) << ","
         << csv_num(round12(r.worst_slack)) << "\n";
    write_output(opts.out, os.str());
  } else {
    json j = json::array();
    for (const auto& r : reports) {
      json e;
      e["inequality"] = r.name;
      e["checked"] = r.checked;
      e["holds"] = r.holds;
      e["fails"] = r.checked - r.holds;
      e["worst_slack"] = r.worst_slack;
      j.push_back(e);
    }
    write_output(opts.out, dump(j));
  }
  return 0;
}

// ---- gadgets -----------------------------------------------------------

int cmd_gen_gadget(long long x, long long m_prime, long long c, const std::string& out_graph,
                   const std::string& out_key) {
  GadgetSpec spec = make_gadget_spec(x, m_prime, c);
  write_output(out_graph, save_graph(build_gadget(spec)) + "\n");
  write_output(out_key, save_schedule(build_key_runs(spec)) + "\n");
  return 0;
}

int cmd_verify_bounds(long long x, long long m_prime, long long c, long long m,
                      const CommonOpts& opts) {
  GadgetSpec spec = make_gadget_spec(x, m_prime, c);
  if (m <= 0) m = spec.key_length();
  SearchGraph g = build_gadget(spec);
  const std::string gadget = "gadget(x=" + std::to_string(x) + ",m'=" +
                             std::to_string(m_prime) + ",c=" + std::to_string(c) + ")";

  double key_success = exact_score(g, build_key(spec), ScoreMode::kAbsorbing);
  double far_success = far_schedule_failure(spec, m);
  RunLengthSchedule inf_runs;
  inf_runs.runs.push_back({kInfTemp, spec.key_length()});
  double inf_success = exact_score(g, inf_runs.expand(), ScoreMode::kAbsorbing);

  std::ostringstream os;
  os << "gadget,schedule,exact_success\n";
  os << gadget << ",key," << csv_num(round12(key_success)) << "\n";
  os << gadget << ",far," << csv_num(round12(far_success)) << "\n";
  os << gadget << ",inf," << csv_num(round12(inf_success)) << "\n";
  write_output(opts.out, os.str());
  return 0;
}

// ---- learn-msg ---------------------------------------------------------

int cmd_learn_msg(const std::string& msg_path, const std::string& graph_path, long long m,
                  double gap, double noise, long long trials_per_query,
                  const std::string& temps_csv, const CommonOpts& opts) {
  std::unique_ptr<ScoreOracle> oracle;
  LearnerConfig config;
  config.m = m;
  config.gap = gap;

  if (!msg_path.empty()) {
    MonotoneStationaryGraph planted = load_msg(read_file(msg_path));
    config.temps = planted.temps();
    if (noise > 0.0)
      oracle = std::make_unique<PlantedNoisyOracle>(std::move(planted), noise, opts.seed);
    else
      oracle = std::make_unique<PlantedExactOracle>(std::move(planted));
  } else {
    if (temps_csv.empty())
      throw ValidationError("--graph backing needs --temps d1,d2,... (decreasing)");
    SearchGraph g = load_graph(read_file(graph_path));
    std::stringstream ss(temps_csv);
    std::string item;
    while (std::getline(ss, item, ',')) config.temps.push_back(std::stod(item));
    long long min_trials = hoeffding_trials(gap / 3.0, 0.999);
    if (trials_per_query < min_trials) trials_per_query = min_trials;
    oracle = std::make_unique<SaEngineOracle>(std::move(g), trials_per_query, opts.seed);
  }

  MonotoneStationaryGraph learned = learn_msg(*oracle, config);
  json j;
  j["msg"] = json::parse(save_msg(learned));
  j["queries"] = oracle->query_count();
  j["m"] = m;
  j["gap"] = gap;
  j["seed"] = opts.seed;
  write_output(opts.out, dump(j));
  std::cerr << "queries: " << oracle->query_count() << "\n";
  return 0;
}

// ---- optimize ----------------------------------------------------------

int cmd_optimize(const std::string& method, const std::string& family_path, double alpha,
                 const CommonOpts& opts) {
  InstanceFamily family = load_family(read_file(family_path));
  OptimizerResult result;
  if (method == "identical") {
    result = identical_paths(family);
  } else if (method == "separate") {
    result = separate_paths_exact(family);
  } else if (method == "lp-round") {
    FractionalCover cover = covering_lp_solve(family);
    if (alpha <= 0.0) alpha = lp_round_default_alpha(family);
    result = lp_round(family, cover, alpha, opts.seed);
  } else if (method == "greedy") {
    result = greedy_cover(family);
  } else if (method == "brute") {
    result = brute_force_optimal(family);
  } else {
    throw ValidationError("unknown method '" + method + "'");
  }

  if (opts.format == "csv") {
    std::ostringstream os;
    os << "method,length,avg_score";
    for (std::size_t k = 0; k < result.per_instance_scores.size(); ++k) os << ",score_" << k;
    os << "\n" << result.method << "," << result.length << "," << csv_num(round12(result.avg_score));
    for (double s : result.per_instance_scores) os << "," << csv_num(round12(s));
    os << "\n";
    write_output(opts.out, os.str());
  } else {
    write_output(opts.out, rounded(json::parse(save_result(result))).dump(2) + "\n");
  }
  return 0;
}

// ---- converge / find-counterexample -------------------------------------

int cmd_converge(const std::string& graph_path, double p_low, double p_mid, double p_high,
                 const std::string& metric_name, double tol, const CommonOpts& opts) {
  SearchGraph g = load_graph(read_file(graph_path));
  Metric metric = metric_from_string(metric_name);
  ProbeResult probe = monotonicity_probe(g, p_low, p_mid, p_high, metric, tol);

  if (opts.format == "csv") {
    std::ostringstream os;
    os << "start,step,distance\n";
    for (std::size_t i = 0; i < probe.trace_high.distances.size(); ++i)
      os << "high," << (i + 1) << "," << csv_num(round12(probe.trace_high.distances[i])) << "\n";
    for (std::size_t i = 0; i < probe.trace_mid.distances.size(); ++i)
      os << "mid," << (i + 1) << "," << csv_num(round12(probe.trace_mid.distances[i])) << "\n";
    write_output(opts.out, os.str());
  } else {
    json j;
    j["p_triple"] = {p_low, p_mid, p_high};
    j["metric"] = to_string(metric);
    j["steps_high"] = probe.steps_high;
    j["steps_mid"] = probe.steps_mid;
    j["violation"] = probe.violation;
    j["trace_high"] = trace_json(probe.trace_high);
    j["trace_mid"] = trace_json(probe.trace_mid);
    write_output(opts.out, dump(j));
  }
  return 0;
}

int cmd_find_counterexample(int nodes, double p_low, double p_mid, double p_high,
                            const std::string& metric_name, long long budget,
                            const CommonOpts& opts) {
  Metric metric = metric_from_string(metric_name);
  auto found = search_counterexample(nodes, metric, p_low, p_mid, p_high, opts.seed, budget,
                                     opts.threads);
  json j;
  j["metric"] = to_string(metric);
  j["p_triple"] = {p_low, p_mid, p_high};
  j["seed"] = opts.seed;
  j["budget"] = budget;
  if (found) {
    j["found"] = true;
    j["candidate_index"] = found->candidate_index;
    j["graph"] = json::parse(save_graph(found->graph));
    j["steps_high"] = found->probe.steps_high;
    j["steps_mid"] = found->probe.steps_mid;
    j["trace_high"] = trace_json(found->probe.trace_high);
    j["trace_mid"] = trace_json(found->probe.trace_mid);
  } else {
    j["found"] = false;
  }
  write_output(opts.out, dump(j));
  return 0;
}

// ---- report ------------------------------------------------------------

int cmd_report(const std::vector<std::string>& inputs, const CommonOpts& opts) {
  json merged = json::array();
  for (const auto& path : inputs) {
    json j = json::parse(read_file(path));
    j["source"] = path;
    merged.push_back(j);
  }
  if (opts.format == "csv") {
    // one row per input: source plus any scalar fields
    std::set<std::string> keys;
    for (const auto& j : merged)
      for (auto it = j.begin(); it != j.end(); ++it)
        if (it.value().is_primitive()) keys.insert(it.key());
    std::ostringstream os;
    os << "source";
    for (const auto& k : keys)
      if (k != "source") os << "," << k;
    os << "\n";
    for (const auto& j : merged) {
      os << j.at("source").get<std::string>();
      for (const auto& k : keys) {
        if (k == "source") continue;
        os << ",";
        if (j.contains(k)) {
          const auto& v = j.at(k);
          if (v.is_number_float()) os << csv_num(round12(v.get<double>()));
          else if (v.is_string()) os << v.get<std::string>();
          else os << v.dump();
        }
      }
      os << "\n";
    }
    write_output(opts.out, os.str());
  } else {
    write_output(opts.out, dump(merged));
  }
  return 0;
}

int dispatch(int argc, const char* const* argv);

// --config file: {"subcommand": "...", "options": {"flag": value, ...}}
int run_config(const std::string& path) {
  json cfg = json::parse(read_file(path));
  std::vector<std::string> args;
  args.push_back("coolsched");
  args.push_back(cfg.at("subcommand").get<std::string>());
  if (cfg.contains("options")) {
    for (auto it = cfg["options"].begin(); it != cfg["options"].end(); ++it) {
      const auto& v = it.value();
      if (v.is_boolean()) {
        if (v.get<bool>()) args.push_back("--" + it.key());
      } else if (v.is_array()) {
        for (const auto& e : v) {
          args.push_back("--" + it.key());
          args.push_back(e.is_string() ? e.get<std::string>() : e.dump());
        }
      } else {
        args.push_back("--" + it.key());
        args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
  }
  std::vector<const char*> raw;
  for (const auto& a : args) raw.push_back(a.c_str());
  return dispatch(static_cast<int>(raw.size()), raw.data());
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"cooling-schedule laboratory"};
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config mirroring a subcommand's flags");

  CommonOpts common;

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo score estimate");
  std::string graph_path, schedule_path, mode_name = "end_state";
  long long trials = 1000;
  double confidence = 0.99;
  bool with_exact = false;
  simulate_cmd->add_option("--graph", graph_path)->required();
  simulate_cmd->add_option("--schedule", schedule_path)->required();
  simulate_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--confidence", confidence);
  simulate_cmd->add_option("--mode", mode_name);
  simulate_cmd->add_flag("--exact", with_exact, "also compute the exact score");
  add_common(simulate_cmd, &common);

  // score
  auto* score_cmd = app.add_subcommand("score", "exact score by propagation");
  score_cmd->add_option("--graph", graph_path)->required();
  score_cmd->add_option("--schedule", schedule_path)->required();
  score_cmd->add_option("--mode", mode_name);
  add_common(score_cmd, &common);

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "build a temperature grid");
  std::string grid_kind = "fine";
  long long e_max = 1, grid_m = 100;
  double delta = 0.1, grid_eps = 0.5, t_min = 0.0, t_max = 0.0;
  grid_cmd->add_option("--kind", grid_kind)->check(CLI::IsMember({"fine", "geometric", "coarse"}));
  grid_cmd->add_option("--e-max", e_max);
  grid_cmd->add_option("--delta", delta);
  grid_cmd->add_option("--m", grid_m);
  grid_cmd->add_option("--epsilon", grid_eps);
  grid_cmd->add_option("--t-min", t_min);
  grid_cmd->add_option("--t-max", t_max);
  add_common(grid_cmd, &common);

  // props
  auto* props_cmd = app.add_subcommand("props", "inequality lattice + fuzz report");
  long long samples = 100000;
  double lattice_step = 0.01;
  props_cmd->add_option("--samples", samples);
  props_cmd->add_option("--lattice-step", lattice_step);
  add_common(props_cmd, &common);

  // gen-gadget
  auto* gadget_cmd = app.add_subcommand("gen-gadget", "emit a lower-bound gadget and its key");
  long long gx = 1, m_prime = 400, gc = 100;
  std::string out_graph = "-", out_key = "-";
  gadget_cmd->add_option("--tau-x", gx, "integer energy step x (tau = x/ln 2)");
  gadget_cmd->add_option("--m-prime", m_prime);
  gadget_cmd->add_option("--c", gc);
  gadget_cmd->add_option("--out-graph", out_graph);
  gadget_cmd->add_option("--out-key", out_key);

  // verify-bounds
  auto* verify_cmd = app.add_subcommand("verify-bounds", "exact gadget bound checks");
  long long vm = 0;
  verify_cmd->add_option("--tau-x", gx);
  verify_cmd->add_option("--m-prime", m_prime);
  verify_cmd->add_option("--c", gc);
  verify_cmd->add_option("--m", vm, "schedule length for the far bound (default 2cm')");
  add_common(verify_cmd, &common);

  // learn-msg
  auto* learn_cmd = app.add_subcommand("learn-msg", "recover a monotone stationary graph");
  std::string msg_path, temps_csv;
  long long learn_m = 8, trials_per_query = 0;
  double gap = 0.05, noise = 0.0;
  learn_cmd->add_option("--msg", msg_path, "planted model JSON");
  learn_cmd->add_option("--graph", graph_path, "search-graph backing");
  learn_cmd->add_option("--temps", temps_csv, "comma list for --graph backing");
  learn_cmd->add_option("--m", learn_m)->check(CLI::PositiveNumber);
  learn_cmd->add_option("--gap", gap);
  learn_cmd->add_option("--noise", noise, "plant bounded noise of this amplitude");
  learn_cmd->add_option("--trials-per-query", trials_per_query);
  add_common(learn_cmd, &common);

  // optimize
  auto* optimize_cmd = app.add_subcommand("optimize", "schedule optimizers over a family");
  std::string method = "separate", family_path;
  double alpha = 0.0;
  optimize_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"identical", "separate", "lp-round", "greedy", "brute"}));
  optimize_cmd->add_option("--family", family_path)->required();
  optimize_cmd->add_option("--alpha", alpha, "rounding inflation (default 100(ln|T|+ln n))");
  add_common(optimize_cmd, &common);

  // converge
  auto* converge_cmd = app.add_subcommand("converge", "stationary convergence probe");
  double p_low = 0.15, p_mid = 0.55, p_high = 0.95, tol = 1e-4;
  std::string metric_name = "l1";
  converge_cmd->add_option("--graph", graph_path)->required();
  converge_cmd->add_option("--p-low", p_low);
  converge_cmd->add_option("--p-mid", p_mid);
  converge_cmd->add_option("--p-high", p_high);
  converge_cmd->add_option("--metric", metric_name);
  converge_cmd->add_option("--tol", tol);
  add_common(converge_cmd, &common);

  // find-counterexample
  auto* find_cmd = app.add_subcommand("find-counterexample", "search for a monotonicity violation");
  int nodes = 6;
  long long budget = 100000;
  find_cmd->add_option("--nodes", nodes);
  find_cmd->add_option("--p-low", p_low);
  find_cmd->add_option("--p-mid", p_mid);
  find_cmd->add_option("--p-high", p_high);
  find_cmd->add_option("--metric", metric_name);
  find_cmd->add_option("--budget", budget);
  add_common(find_cmd, &common);

  // report
  auto* report_cmd = app.add_subcommand("report", "aggregate prior JSON outputs");
  std::vector<std::string> inputs;
  report_cmd->add_option("--inputs", inputs, "JSON files to merge")->required();
  add_common(report_cmd, &common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) return run_config(config_path);
    if (simulate_cmd->parsed())
      return cmd_simulate(graph_path, schedule_path, trials, confidence, mode_name, with_exact,
                          common);
    if (score_cmd->parsed()) return cmd_score(graph_path, schedule_path, mode_name, common);
    if (grid_cmd->parsed())
      return cmd_grid(grid_kind, e_max, delta, grid_m, grid_eps, t_min, t_max, common);
    if (props_cmd->parsed()) return cmd_props(samples, lattice_step, common);
    if (gadget_cmd->parsed()) return cmd_gen_gadget(gx, m_prime, gc, out_graph, out_key);
    if (verify_cmd->parsed()) return cmd_verify_bounds(gx, m_prime, gc, vm, common);
    if (learn_cmd->parsed())
      return cmd_learn_msg(msg_path, graph_path, learn_m, gap, noise, trials_per_query,
                           temps_csv, common);
    if (optimize_cmd->parsed()) return cmd_optimize(method, family_path, alpha, common);
    if (converge_cmd->parsed())
      return cmd_converge(graph_path, p_low, p_mid, p_high, metric_name, tol, common);
    if (find_cmd->parsed())
      return cmd_find_counterexample(nodes, p_low, p_mid, p_high, metric_name, budget, common);
    if (report_cmd->parsed()) return cmd_report(inputs, common);
    std::cerr << app.help();
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) { return dispatch(argc, argv); }

}  // namespace coolsched
