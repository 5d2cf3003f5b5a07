// wdro: batch front end for the robust portfolio library. Subcommands:
// simulate, solve, feasibility, confidence, sweep, backtest. Every command is
// deterministic given its flags and seed; the fully-resolved configuration is
// echoed into the output directory so a run can be reproduced from its
// artifacts alone.
//
// Exit codes: 0 success, 1 usage/IO/solver failure, 2 infeasible model.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wdro/backtest.hpp"
#include "wdro/confidence.hpp"
#include "wdro/dro.hpp"
#include "wdro/feasibility.hpp"
#include "wdro/market_sim.hpp"
#include "wdro/model.hpp"
#include "wdro/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wdro;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot open config file: " + path);
  json j;
  in >> j;
  if (!j.is_object()) throw CliError("config must be a JSON object");
  return j;
}

// Flags beat config-file values; config-file values beat defaults.
template <typename T>
void merge_option(const CLI::App& app, const json& cfg, const std::string& flag,
                  T& value) {
  const CLI::Option* opt = app.get_option(flag);
  const std::string key = flag.substr(2);
  if (opt->count() == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

void ensure_out_dir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw CliError("cannot create output directory: " + out);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError("cannot write file: " + path);
  f << text;
}

void echo_config(const std::string& out_dir, const json& resolved) {
  write_text_file(out_dir + "/config_echo.json", resolved.dump(2) + "\n");
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  return values;
}

// Grid specs: "lin:lo:hi:k", "log:lo:hi:k", or a bare comma list.
std::vector<double> parse_grid(const std::string& text) {
  if (text.rfind("lin:", 0) == 0 || text.rfind("log:", 0) == 0) {
    const bool logspace = text[1] == 'o';
    std::stringstream ss(text.substr(4));
    std::string lo_s, hi_s, k_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
        !std::getline(ss, k_s, ':'))
      throw CliError("bad grid spec: " + text);
    const double lo = std::stod(lo_s);
    const double hi = std::stod(hi_s);
    const int k = std::stoi(k_s);
    if (k < 1) throw CliError("grid needs at least one point");
    std::vector<double> grid(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const double f = k == 1 ? 0.0 : static_cast<double>(i) / (k - 1);
      grid[static_cast<std::size_t>(i)] =
          logspace ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    return grid;
  }
  auto grid = parse_double_list(text);
  if (grid.empty()) throw CliError("empty grid: " + text);
  return grid;
}

dro::ProblemKind parse_kind(const std::string& kind) {
  if (kind == "cvar") return dro::ProblemKind::MeanCVaR;
  if (kind == "variance") return dro::ProblemKind::MeanVariance;
  throw CliError("unknown kind (expected cvar|variance): " + kind);
}

market_sim::MarketModel build_model(Eigen::Index m, double psi_std,
                                    const std::string& means,
                                    const std::string& idio_stds) {
  auto model = market_sim::MarketModel::with_defaults(m, psi_std);
  if (!means.empty()) {
    auto v = parse_double_list(means);
    model.means = Eigen::Map<Eigen::VectorXd>(v.data(),
                                              static_cast<Eigen::Index>(v.size()));
  }
  if (!idio_stds.empty()) {
    auto v = parse_double_list(idio_stds);
    model.idio_stds = Eigen::Map<Eigen::VectorXd>(
        v.data(), static_cast<Eigen::Index>(v.size()));
  }
  model.validate();
  return model;
}

json solution_to_json(const RobustSolution& sol, dro::ProblemKind kind,
                      const DroConfig& cfg) {
  json j;
  j["status"] = to_string(sol.status);
  j["kind"] = kind == dro::ProblemKind::MeanCVaR ? "cvar" : "variance";
  j["epsilon"] = cfg.epsilon;
  j["mu"] = cfg.mu;
  j["alpha"] = cfg.alpha;
  j["p"] = cfg.p;
  if (sol.portfolio) {
    j["weights"] = std::vector<double>(
        sol.portfolio->weights().data(),
        sol.portfolio->weights().data() + sol.portfolio->weights().size());
    j["objective"] = sol.objective;
    j["robust_constraint_value"] = sol.robust_constraint_value;
  }
  if (sol.tau) j["tau"] = *sol.tau;
  return j;
}

RobustSolution solve_kind(const ReturnSample& sample, const DroConfig& cfg,
                          dro::ProblemKind kind) {
  if (kind == dro::ProblemKind::MeanCVaR)
    return dro::solve_dro(dro::build_mean_cvar_socp(sample, cfg), kind);
  return dro::solve_dro(
      dro::build_mean_variance_socp(compute_moments(sample), cfg), kind);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  int n = 0;
  int m = 10;
  double psi_std = 0.02;
  std::string means, idio_stds;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
};

int cmd_simulate(const SimulateArgs& a) {
  if (a.n < 1) throw CliError("--n must be at least 1");
  auto model = build_model(a.m, a.psi_std, a.means, a.idio_stds);
  auto sample = market_sim::generate(model, a.n, a.seed);
  ensure_out_dir(a.out);
  write_returns_csv_file(sample, a.out + "/returns.csv");

  json echo;
  echo["command"] = "simulate";
  echo["n"] = a.n;
  echo["m"] = a.m;
  echo["psi-std"] = a.psi_std;
  if (!a.means.empty()) echo["means"] = a.means;
  if (!a.idio_stds.empty()) echo["idio-stds"] = a.idio_stds;
  echo["seed"] = a.seed;
  echo["out"] = a.out;
  echo_config(a.out, echo);
  std::cout << "wrote " << a.out << "/returns.csv (" << a.n << " x " << a.m
            << ")\n";
  return kExitOk;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
  std::string data;
  std::string kind = "cvar";
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  std::string eps_rule;
  double mu = 0.0;
  double alpha = 0.05;
  int p = 2;
  std::string dump_program;  ///< write the cone program here before solving
  std::string out;
  std::string config;
};

int cmd_solve(const SolveArgs& a) {
  auto sample = read_returns_csv_file(a.data);
  const auto kind = parse_kind(a.kind);
  DroConfig cfg;
  cfg.mu = a.mu;
  cfg.alpha = a.alpha;
  cfg.p = a.p;

  json extra;
  const bool has_eps = !std::isnan(a.epsilon);
  if (has_eps == !a.eps_rule.empty())
    throw CliError("pass exactly one of --epsilon and --eps-rule");
  if (has_eps) {
    cfg.epsilon = a.epsilon;
  } else {
    auto moments = compute_moments(sample);
    auto fr = feasibility::eps_max(moments, cfg.mu, cfg.p);
    extra["eps_max"] = fr.eps_max;
    extra["mu_max"] = fr.mu_max;
    if (a.eps_rule == "maxfact")
      cfg.epsilon = fr.eps_max;
    else if (a.eps_rule == "3maxfact/4")
      cfg.epsilon = 0.75 * fr.eps_max;
    else if (a.eps_rule == "maxfact/2")
      cfg.epsilon = 0.5 * fr.eps_max;
    else
      throw CliError("unknown eps rule: " + a.eps_rule);
  }

  const socp::ConicProgram prog =
      kind == dro::ProblemKind::MeanCVaR
          ? dro::build_mean_cvar_socp(sample, cfg)
          : dro::build_mean_variance_socp(compute_moments(sample), cfg);
  if (!a.dump_program.empty()) {
    std::ofstream dump(a.dump_program);
    if (!dump) throw CliError("cannot write file: " + a.dump_program);
    socp::dump_program(prog, dump);
  }

  RobustSolution sol;
  try {
    sol = dro::solve_dro(prog, kind);
  } catch (const dro::SolverFailed&) {
    sol.status = SolveStatus::NumericalLimit;
  }
  json j = solution_to_json(sol, kind, cfg);
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::cout << j.dump(2) << '\n';
  if (!a.out.empty()) {
    ensure_out_dir(a.out);
    write_text_file(a.out + "/solution.json", j.dump(2) + "\n");
    json echo;
    echo["command"] = "solve";
    echo["data"] = a.data;
    echo["kind"] = a.kind;
    if (has_eps) echo["epsilon"] = a.epsilon;
    if (!a.eps_rule.empty()) echo["eps-rule"] = a.eps_rule;
    echo["mu"] = a.mu;
    echo["alpha"] = a.alpha;
    echo["p"] = a.p;
    echo["out"] = a.out;
    echo_config(a.out, echo);
  }
  if (sol.status == SolveStatus::Infeasible) return kExitInfeasible;
  if (sol.status != SolveStatus::Optimal) return kExitError;
  return kExitOk;
}

// ------------------------------------------------------------- feasibility

struct FeasibilityArgs {
  std::string data;
  std::string mu_grid;
  int p = 2;
  std::string out;
  std::string config;
};

int cmd_feasibility(const FeasibilityArgs& a) {
  auto sample = read_returns_csv_file(a.data);
  auto moments = compute_moments(sample);
  const auto grid = parse_grid(a.mu_grid);
  const double cap = feasibility::mu_max(moments);

  std::ostringstream csv;
  csv << "mu,mu_max,eps_max,status,bisection_iterations\n";
  for (double mu : grid) {
    csv << format_csv_double(mu) << ',' << format_csv_double(cap) << ',';
    if (mu > cap + 1e-12) {
      csv << format_csv_double(0.0) << ",above_mu_max,0\n";
      continue;
    }
    auto fr = feasibility::eps_max(moments, mu, a.p);
    csv << format_csv_double(fr.eps_max) << ",ok," << fr.bisection_iterations
        << '\n';
  }
  ensure_out_dir(a.out);
  write_text_file(a.out + "/feasibility.csv", csv.str());

  json echo;
  echo["command"] = "feasibility";
  echo["data"] = a.data;
  echo["mu-grid"] = a.mu_grid;
  echo["p"] = a.p;
  echo["out"] = a.out;
  echo_config(a.out, echo);
  std::cout << "wrote " << a.out << "/feasibility.csv\n";
  return kExitOk;
}

// -------------------------------------------------------------- confidence

struct ConfidenceArgs {
  std::string data;
  double epsilon = 0.0;
  std::string kind = "cvar";
  int replicates = confidence::kDefaultReplicates;
  double train_fraction = confidence::kDefaultTrainFraction;
  std::uint64_t seed = 0;
  double mu = 0.0;
  double alpha = 0.05;
  int p = 2;
  std::string out;
  std::string config;
};

int cmd_confidence(const ConfidenceArgs& a) {
  auto sample = read_returns_csv_file(a.data);
  DroConfig cfg;
  cfg.epsilon = a.epsilon;
  cfg.mu = a.mu;
  cfg.alpha = a.alpha;
  cfg.p = a.p;
  auto rep = confidence::expected_confidence(sample, cfg, parse_kind(a.kind),
                                             a.replicates, a.train_fraction,
                                             a.seed);
  if (rep.train_rows_below_assets)
    std::cerr << "warning: training sets have fewer rows than assets\n";
  std::cout << rep.to_json() << '\n';
  if (!a.out.empty()) {
    ensure_out_dir(a.out);
    write_text_file(a.out + "/confidence.json", rep.to_json() + "\n");
    json echo;
    echo["command"] = "confidence";
    echo["data"] = a.data;
    echo["epsilon"] = a.epsilon;
    echo["kind"] = a.kind;
    echo["replicates"] = a.replicates;
    echo["train-fraction"] = a.train_fraction;
    echo["seed"] = a.seed;
    echo["mu"] = a.mu;
    echo["alpha"] = a.alpha;
    echo["out"] = a.out;
    echo_config(a.out, echo);
  }
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string data;  // empty => simulate from the model flags
  int m = 10;
  double psi_std = 0.02;
  std::string means, idio_stds;
  int n = 300;
  std::string eps_grid = "log:1e-4:1e-1:10";
  int runs = 200;
  std::string kinds = "both";
  double mu = 0.25;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string config;
};

struct SweepCell {
  bool feasible = false;
  double ret = 0.0, var = 0.0, cvar = 0.0, sharpe = 0.0, objective = 0.0;
};

int cmd_sweep(const SweepArgs& a) {
  if (a.runs < 1) throw CliError("--runs must be at least 1");
  const auto grid = parse_grid(a.eps_grid);
  std::vector<dro::ProblemKind> kinds;
  if (a.kinds == "both" || a.kinds == "cvar")
    kinds.push_back(dro::ProblemKind::MeanCVaR);
  if (a.kinds == "both" || a.kinds == "variance")
    kinds.push_back(dro::ProblemKind::MeanVariance);
  if (kinds.empty()) throw CliError("unknown --kinds: " + a.kinds);

  const bool from_model = a.data.empty();
  std::optional<market_sim::MarketModel> model;
  std::optional<ReturnSample> source;
  SampleMoments eval_moments{Eigen::VectorXd(), Eigen::MatrixXd()};
  std::vector<double> eval_losses;  // data mode: full-sample losses per run
  if (from_model) {
    model = build_model(a.m, a.psi_std, a.means, a.idio_stds);
  } else {
    source = read_returns_csv_file(a.data);
    eval_moments = compute_moments(*source);
  }

  const std::size_t cells = static_cast<std::size_t>(a.runs) * grid.size() *
                            kinds.size();
  std::vector<SweepCell> results(cells);
  const auto cell_index = [&](int run, std::size_t gi, std::size_t ki) {
    return (static_cast<std::size_t>(run) * grid.size() + gi) * kinds.size() + ki;
  };

  const auto run_one = [&](int run) {
    ReturnSample sample = from_model
                              ? market_sim::generate(*model, a.n,
                                                     rng::derive_seed(a.seed,
                                                                      static_cast<std::uint64_t>(run)))
                              : [&] {
                                  // bootstrap resample of the data rows
                                  rng::engine eng(rng::derive_seed(
                                      a.seed, static_cast<std::uint64_t>(run)));
                                  const Eigen::Index n = source->periods();
                                  Eigen::MatrixXd rows(n, source->assets());
                                  for (Eigen::Index i = 0; i < n; ++i)
                                    rows.row(i) = source->returns().row(
                                        static_cast<Eigen::Index>(
                                            rng::bounded(eng, static_cast<std::uint64_t>(n))));
                                  return ReturnSample(std::move(rows));
                                }();
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
        DroConfig cfg;
        cfg.epsilon = grid[gi];
        cfg.mu = a.mu;
        cfg.alpha = a.alpha;
        SweepCell cell;
        try {
          auto sol = solve_kind(sample, cfg, kinds[ki]);
          if (sol.status == SolveStatus::Optimal) {
            cell.feasible = true;
            cell.objective = sol.objective;
            const auto& x = *sol.portfolio;
            if (from_model) {
              cell.ret = market_sim::true_return(*model, x);
              cell.var = market_sim::true_variance(*model, x);
              cell.cvar = market_sim::true_cvar_gaussian(*model, x, a.alpha);
            } else {
              cell.ret = eval_moments.mean.dot(x.weights());
              cell.var = x.weights().dot(eval_moments.covariance * x.weights());
              std::vector<double> losses(
                  static_cast<std::size_t>(source->periods()));
              for (Eigen::Index i = 0; i < source->periods(); ++i)
                losses[static_cast<std::size_t>(i)] =
                    -source->returns().row(i).dot(x.weights());
              cell.cvar = backtest::empirical_cvar(losses, a.alpha);
            }
            cell.sharpe = cell.var > 0.0 ? cell.ret / std::sqrt(cell.var) : 0.0;
          }
        } catch (const dro::SolverFailed&) {
          // left infeasible: unconverged cells are reported like infeasible ones
        }
        results[cell_index(run, gi, ki)] = cell;
      }
    }
  };

  // runs are independent (run-indexed seeds); output order is canonical below
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers = std::max(1, std::min(a.threads > 0 ? a.threads : hw, a.runs));
  if (workers <= 1) {
    for (int run = 0; run < a.runs; ++run) run_one(run);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int run = next.fetch_add(1); run < a.runs; run = next.fetch_add(1))
          run_one(run);
      });
    for (auto& t : pool) t.join();
  }

  const auto kind_name = [&](std::size_t ki) {
    return kinds[ki] == dro::ProblemKind::MeanCVaR ? "cvar" : "variance";
  };

  std::ostringstream runs_csv;
  runs_csv << "run,epsilon,kind,status,oos_return,oos_variance,oos_cvar,"
              "oos_sharpe,objective\n";
  for (int run = 0; run < a.runs; ++run) {
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
        const auto& cell = results[cell_index(run, gi, ki)];
        runs_csv << run << ',' << format_csv_double(grid[gi]) << ','
                 << kind_name(ki) << ',';
        if (!cell.feasible) {
          runs_csv << "Infeasible,,,,,\n";
          continue;
        }
        runs_csv << "Optimal," << format_csv_double(cell.ret) << ','
                 << format_csv_double(cell.var) << ','
                 << format_csv_double(cell.cvar) << ','
                 << format_csv_double(cell.sharpe) << ','
                 << format_csv_double(cell.objective) << '\n';
      }
    }
  }

  // aggregate: mean and 20/80 quantiles over feasible runs, per (epsilon, kind)
  const auto quantile = [](std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - std::floor(pos);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
  };
  std::ostringstream agg_csv;
  agg_csv << "epsilon,kind,n_feasible";
  for (const char* metric : {"return", "variance", "cvar", "sharpe", "objective"})
    agg_csv << ",mean_" << metric << ",q20_" << metric << ",q80_" << metric;
  agg_csv << '\n';
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
      std::vector<std::vector<double>> series(5);
      for (int run = 0; run < a.runs; ++run) {
        const auto& cell = results[cell_index(run, gi, ki)];
        if (!cell.feasible) continue;
        series[0].push_back(cell.ret);
        series[1].push_back(cell.var);
        series[2].push_back(cell.cvar);
        series[3].push_back(cell.sharpe);
        series[4].push_back(cell.objective);
      }
      agg_csv << format_csv_double(grid[gi]) << ',' << kind_name(ki) << ','
              << series[0].size();
      for (const auto& s : series) {
        if (s.empty()) {
          agg_csv << ",,,";
          continue;
        }
        double mean = 0.0;
        for (double v : s) mean += v;
        mean /= static_cast<double>(s.size());
        agg_csv << ',' << format_csv_double(mean) << ','
                << format_csv_double(quantile(s, 0.2)) << ','
                << format_csv_double(quantile(s, 0.8));
      }
      agg_csv << '\n';
    }
  }

  ensure_out_dir(a.out);
  write_text_file(a.out + "/sweep_runs.csv", runs_csv.str());
  write_text_file(a.out + "/sweep_aggregate.csv", agg_csv.str());

  json echo;
  echo["command"] = "sweep";
  if (!a.data.empty()) echo["data"] = a.data;
  echo["m"] = a.m;
  echo["psi-std"] = a.psi_std;
  if (!a.means.empty()) echo["means"] = a.means;
  if (!a.idio_stds.empty()) echo["idio-stds"] = a.idio_stds;
  echo["n"] = a.n;
  echo["eps-grid"] = a.eps_grid;
  echo["runs"] = a.runs;
  echo["kinds"] = a.kinds;
  echo["mu"] = a.mu;
  echo["alpha"] = a.alpha;
  echo["seed"] = a.seed;
  echo["out"] = a.out;
  echo_config(a.out, echo);
  std::cout << "wrote " << a.out << "/sweep_runs.csv and sweep_aggregate.csv\n";
  return kExitOk;
}

// ---------------------------------------------------------------- backtest

struct BacktestArgs {
  std::string data;
  std::string strategies =
      "cvar-wass:maxfact,cvar-wass:3maxfact/4,cvar-wass:maxfact/2,"
      "var-wass:maxfact,var-wass:3maxfact/4,var-wass:maxfact/2,"
      "cvar-saa,var-saa,mincvar,minvar,maxsr,ew";
  int window = 0;
  double mu = 0.001;
  double alpha = 0.05;
  double threshold = backtest::kDefaultAssetThreshold;
  std::string out;
  std::string config;
};

std::vector<backtest::Strategy> parse_strategies(const std::string& text,
                                                 double alpha) {
  std::vector<backtest::Strategy> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    std::vector<std::string> parts;
    std::stringstream ts(token);
    std::string part;
    while (std::getline(ts, part, ':')) parts.push_back(part);

    backtest::Strategy s;
    s.cfg.alpha = alpha;
    const std::string& name = parts[0];
    if (name == "ew") s.kind = backtest::StrategyKind::EW;
    else if (name == "minvar") s.kind = backtest::StrategyKind::MinVar;
    else if (name == "mincvar") s.kind = backtest::StrategyKind::MinCVaR;
    else if (name == "maxsr") s.kind = backtest::StrategyKind::MaxSR;
    else if (name == "cvar-saa") s.kind = backtest::StrategyKind::CVaRSAA;
    else if (name == "var-saa") s.kind = backtest::StrategyKind::VarSAA;
    else if (name == "cvar-wass") s.kind = backtest::StrategyKind::CVaRWass;
    else if (name == "var-wass") s.kind = backtest::StrategyKind::VarWass;
    else throw CliError("unknown strategy: " + name);

    if (backtest::is_wasserstein(s.kind)) {
      if (parts.size() < 2)
        throw CliError("strategy " + name + " needs an eps rule");
      backtest::EpsRule rule;
      if (parts[1] == "maxfact") rule.kind = backtest::EpsRuleKind::MaxFact;
      else if (parts[1] == "3maxfact/4")
        rule.kind = backtest::EpsRuleKind::ThreeQuarterMaxFact;
      else if (parts[1] == "maxfact/2")
        rule.kind = backtest::EpsRuleKind::HalfMaxFact;
      else if (parts[1] == "fixed") {
        if (parts.size() < 3) throw CliError("fixed rule needs a value");
        rule.kind = backtest::EpsRuleKind::Fixed;
        rule.fixed_value = std::stod(parts[2]);
      } else {
        throw CliError("unknown eps rule: " + parts[1]);
      }
      s.eps_rule = rule;
    } else if (parts.size() > 1) {
      throw CliError("strategy " + name + " does not take an eps rule");
    }
    out.push_back(std::move(s));
  }
  if (out.empty()) throw CliError("no strategies given");
  return out;
}

int cmd_backtest(const BacktestArgs& a) {
  if (a.window < 1) throw CliError("--window must be positive");
  auto data = read_returns_csv_file(a.data);
  auto strategies = parse_strategies(a.strategies, a.alpha);
  auto report =
      backtest::run_backtest(data, strategies, a.window, a.mu, a.threshold);

  ensure_out_dir(a.out);
  {
    std::ofstream f(a.out + "/metrics.csv", std::ios::binary);
    backtest::write_metrics_csv(report, f);
  }
  {
    std::ofstream f(a.out + "/wealth.csv", std::ios::binary);
    backtest::write_wealth_csv(report, f);
  }
  {
    std::ofstream f(a.out + "/detail.json", std::ios::binary);
    backtest::write_detail_json(report, f);
  }
  json echo;
  echo["command"] = "backtest";
  echo["data"] = a.data;
  echo["strategies"] = a.strategies;
  echo["window"] = a.window;
  echo["mu"] = a.mu;
  echo["alpha"] = a.alpha;
  echo["threshold"] = a.threshold;
  echo["out"] = a.out;
  echo_config(a.out, echo);
  std::cout << "wrote " << a.out << "/{metrics.csv,wealth.csv,detail.json}\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein distributionally robust portfolio toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "generate a synthetic market");
  sim_cmd->add_option("--n", sim.n, "number of periods");
  sim_cmd->add_option("--m", sim.m, "number of assets");
  sim_cmd->add_option("--psi-std", sim.psi_std, "systematic factor std");
  sim_cmd->add_option("--means", sim.means, "comma list of asset means");
  sim_cmd->add_option("--idio-stds", sim.idio_stds, "comma list of idio stds");
  sim_cmd->add_option("--seed", sim.seed, "random seed");
  sim_cmd->add_option("--out", sim.out, "output directory");
  sim_cmd->add_option("--config", sim.config, "JSON config file");

  SolveArgs slv;
  auto* slv_cmd = app.add_subcommand("solve", "solve one robust problem");
  slv_cmd->add_option("--data", slv.data, "returns CSV");
  slv_cmd->add_option("--kind", slv.kind, "cvar|variance");
  slv_cmd->add_option("--epsilon", slv.epsilon, "Wasserstein radius");
  slv_cmd->add_option("--eps-rule", slv.eps_rule,
                      "maxfact|3maxfact/4|maxfact/2");
  slv_cmd->add_option("--mu", slv.mu, "target expected return");
  slv_cmd->add_option("--alpha", slv.alpha, "CVaR level");
  slv_cmd->add_option("--p", slv.p, "Wasserstein order");
  slv_cmd->add_option("--dump-program", slv.dump_program,
                      "write the cone program to this file for cross-checking");
  slv_cmd->add_option("--out", slv.out, "output directory (optional)");
  slv_cmd->add_option("--config", slv.config, "JSON config file");

  FeasibilityArgs fea;
  auto* fea_cmd = app.add_subcommand("feasibility", "mu_max / eps_max table");
  fea_cmd->add_option("--data", fea.data, "returns CSV");
  fea_cmd->add_option("--mu-grid", fea.mu_grid, "grid spec or comma list");
  fea_cmd->add_option("--p", fea.p, "Wasserstein order");
  fea_cmd->add_option("--out", fea.out, "output directory");
  fea_cmd->add_option("--config", fea.config, "JSON config file");

  ConfidenceArgs conf;
  auto* conf_cmd =
      app.add_subcommand("confidence", "bootstrap expected confidence level");
  conf_cmd->add_option("--data", conf.data, "returns CSV");
  conf_cmd->add_option("--epsilon", conf.epsilon, "Wasserstein radius");
  conf_cmd->add_option("--kind", conf.kind, "cvar|variance");
  conf_cmd->add_option("--replicates", conf.replicates, "bootstrap replicates");
  conf_cmd->add_option("--train-fraction", conf.train_fraction,
                       "training split fraction");
  conf_cmd->add_option("--seed", conf.seed, "random seed");
  conf_cmd->add_option("--mu", conf.mu, "target expected return");
  conf_cmd->add_option("--alpha", conf.alpha, "CVaR level");
  conf_cmd->add_option("--p", conf.p, "Wasserstein order");
  conf_cmd->add_option("--out", conf.out, "output directory (optional)");
  conf_cmd->add_option("--config", conf.config, "JSON config file");

  SweepArgs swp;
  auto* swp_cmd =
      app.add_subcommand("sweep", "out-of-sample metrics across a radius grid");
  swp_cmd->add_option("--data", swp.data, "returns CSV (omit to simulate)");
  swp_cmd->add_option("--m", swp.m, "assets (model input)");
  swp_cmd->add_option("--psi-std", swp.psi_std, "systematic std (model input)");
  swp_cmd->add_option("--means", swp.means, "asset means (model input)");
  swp_cmd->add_option("--idio-stds", swp.idio_stds, "idio stds (model input)");
  swp_cmd->add_option("--n", swp.n, "sample size per run (model input)");
  swp_cmd->add_option("--eps-grid", swp.eps_grid, "grid spec or comma list");
  swp_cmd->add_option("--runs", swp.runs, "independent runs");
  swp_cmd->add_option("--kinds", swp.kinds, "both|cvar|variance");
  swp_cmd->add_option("--mu", swp.mu, "target expected return");
  swp_cmd->add_option("--alpha", swp.alpha, "CVaR level");
  swp_cmd->add_option("--seed", swp.seed, "random seed");
  swp_cmd->add_option("--threads", swp.threads, "worker threads (0 = auto)");
  swp_cmd->add_option("--out", swp.out, "output directory");
  swp_cmd->add_option("--config", swp.config, "JSON config file");

  BacktestArgs bt;
  auto* bt_cmd = app.add_subcommand("backtest", "rolling-horizon evaluation");
  bt_cmd->add_option("--data", bt.data, "returns CSV");
  bt_cmd->add_option("--strategies", bt.strategies, "comma list of strategies");
  bt_cmd->add_option("--window", bt.window, "sliding window length");
  bt_cmd->add_option("--mu", bt.mu, "target expected return");
  bt_cmd->add_option("--alpha", bt.alpha, "CVaR level");
  bt_cmd->add_option("--threshold", bt.threshold, "avg-assets weight threshold");
  bt_cmd->add_option("--out", bt.out, "output directory");
  bt_cmd->add_option("--config", bt.config, "JSON config file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim_cmd->parsed()) {
      if (!sim.config.empty()) {
        const json cfg = load_config(sim.config);
        merge_option(*sim_cmd, cfg, "--n", sim.n);
        merge_option(*sim_cmd, cfg, "--m", sim.m);
        merge_option(*sim_cmd, cfg, "--psi-std", sim.psi_std);
        merge_option(*sim_cmd, cfg, "--means", sim.means);
        merge_option(*sim_cmd, cfg, "--idio-stds", sim.idio_stds);
        merge_option(*sim_cmd, cfg, "--seed", sim.seed);
        merge_option(*sim_cmd, cfg, "--out", sim.out);
      }
      if (sim.out.empty()) throw CliError("--out is required");
      return cmd_simulate(sim);
    }
    if (slv_cmd->parsed()) {
      if (!slv.config.empty()) {
        const json cfg = load_config(slv.config);
        merge_option(*slv_cmd, cfg, "--data", slv.data);
        merge_option(*slv_cmd, cfg, "--kind", slv.kind);
        merge_option(*slv_cmd, cfg, "--epsilon", slv.epsilon);
        merge_option(*slv_cmd, cfg, "--eps-rule", slv.eps_rule);
        merge_option(*slv_cmd, cfg, "--mu", slv.mu);
        merge_option(*slv_cmd, cfg, "--alpha", slv.alpha);
        merge_option(*slv_cmd, cfg, "--p", slv.p);
        merge_option(*slv_cmd, cfg, "--out", slv.out);
      }
      if (slv.data.empty()) throw CliError("--data is required");
      return cmd_solve(slv);
    }
    if (fea_cmd->parsed()) {
      if (!fea.config.empty()) {
        const json cfg = load_config(fea.config);
        merge_option(*fea_cmd, cfg, "--data", fea.data);
        merge_option(*fea_cmd, cfg, "--mu-grid", fea.mu_grid);
        merge_option(*fea_cmd, cfg, "--p", fea.p);
        merge_option(*fea_cmd, cfg, "--out", fea.out);
      }
      if (fea.data.empty() || fea.mu_grid.empty() || fea.out.empty())
        throw CliError("--data, --mu-grid and --out are required");
      return cmd_feasibility(fea);
    }
    if (conf_cmd->parsed()) {
      if (!conf.config.empty()) {
        const json cfg = load_config(conf.config);
        merge_option(*conf_cmd, cfg, "--data", conf.data);
        merge_option(*conf_cmd, cfg, "--epsilon", conf.epsilon);
        merge_option(*conf_cmd, cfg, "--kind", conf.kind);
        merge_option(*conf_cmd, cfg, "--replicates", conf.replicates);
        merge_option(*conf_cmd, cfg, "--train-fraction", conf.train_fraction);
        merge_option(*conf_cmd, cfg, "--seed", conf.seed);
        merge_option(*conf_cmd, cfg, "--mu", conf.mu);
        merge_option(*conf_cmd, cfg, "--alpha", conf.alpha);
        merge_option(*conf_cmd, cfg, "--p", conf.p);
        merge_option(*conf_cmd, cfg, "--out", conf.out);
      }
      if (conf.data.empty()) throw CliError("--data is required");
      return cmd_confidence(conf);
    }
    if (swp_cmd->parsed()) {
      if (!swp.config.empty()) {
        const json cfg = load_config(swp.config);
        merge_option(*swp_cmd, cfg, "--data", swp.data);
        merge_option(*swp_cmd, cfg, "--m", swp.m);
        merge_option(*swp_cmd, cfg, "--psi-std", swp.psi_std);
        merge_option(*swp_cmd, cfg, "--means", swp.means);
        merge_option(*swp_cmd, cfg, "--idio-stds", swp.idio_stds);
        merge_option(*swp_cmd, cfg, "--n", swp.n);
        merge_option(*swp_cmd, cfg, "--eps-grid", swp.eps_grid);
        merge_option(*swp_cmd, cfg, "--runs", swp.runs);
        merge_option(*swp_cmd, cfg, "--kinds", swp.kinds);
        merge_option(*swp_cmd, cfg, "--mu", swp.mu);
        merge_option(*swp_cmd, cfg, "--alpha", swp.alpha);
        merge_option(*swp_cmd, cfg, "--seed", swp.seed);
        merge_option(*swp_cmd, cfg, "--threads", swp.threads);
        merge_option(*swp_cmd, cfg, "--out", swp.out);
      }
      if (swp.out.empty()) throw CliError("--out is required");
      return cmd_sweep(swp);
    }
    if (bt_cmd->parsed()) {
      if (!bt.config.empty()) {
        const json cfg = load_config(bt.config);
        merge_option(*bt_cmd, cfg, "--data", bt.data);
        merge_option(*bt_cmd, cfg, "--strategies", bt.strategies);
        merge_option(*bt_cmd, cfg, "--window", bt.window);
        merge_option(*bt_cmd, cfg, "--mu", bt.mu);
        merge_option(*bt_cmd, cfg, "--alpha", bt.alpha);
        merge_option(*bt_cmd, cfg, "--threshold", bt.threshold);
        merge_option(*bt_cmd, cfg, "--out", bt.out);
      }
      if (bt.data.empty() || bt.out.empty())
        throw CliError("--data and --out are required");
      return cmd_backtest(bt);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const socp::MalformedProgram& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const feasibility::MuAboveMax& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
