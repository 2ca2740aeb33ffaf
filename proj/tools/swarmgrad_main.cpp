// Experiment runner: binds the library modules to config files, CSV output
// and run manifests.
//
// Exit codes: 0 ok, 2 config error, 3 numerical abort, 4 assertion failure
// (check-fi --assert).

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "swarmgrad/diagnostics.hpp"
#include "swarmgrad/io.hpp"
#include "swarmgrad/landscape.hpp"
#include "swarmgrad/numerics.hpp"
#include "swarmgrad/pde1d.hpp"
#include "swarmgrad/potentials.hpp"
#include "swarmgrad/schedule.hpp"
#include "swarmgrad/stationary.hpp"
#include "swarmgrad/swarm.hpp"

namespace sg = swarmgrad;
using nlohmann::ordered_json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat dotted-key store: file values overridden by CLI, unknown keys rejected.
class Params {
 public:
  void register_key(const std::string& key) { known_.insert(key); }

  void load_file(const std::filesystem::path& p) {
    const ordered_json j = sg::load_config_file(p);
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!known_.count(it.key()))
        throw ConfigError("unknown config key: " + it.key());
      values_[it.key()] = it.value();
    }
  }

  void set(const std::string& key, const ordered_json& v) {
    if (!known_.count(key)) throw ConfigError("unknown config key: " + key);
    values_[key] = v;
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  double get_double(const std::string& key, double dflt) const {
    if (!values_.contains(key)) return dflt;
    const auto& v = values_.at(key);
    if (!v.is_number()) throw ConfigError("config key " + key + " must be numeric");
    return v.get<double>();
  }

  long get_int(const std::string& key, long dflt) const {
    if (!values_.contains(key)) return dflt;
    const auto& v = values_.at(key);
    if (!v.is_number_integer())
      throw ConfigError("config key " + key + " must be an integer");
    return v.get<long>();
  }

  std::string get_string(const std::string& key, const std::string& dflt) const {
    if (!values_.contains(key)) return dflt;
    const auto& v = values_.at(key);
    if (!v.is_string()) throw ConfigError("config key " + key + " must be a string");
    return v.get<std::string>();
  }

  const ordered_json& snapshot() const { return values_; }

 private:
  std::set<std::string> known_;
  ordered_json values_ = ordered_json::object();
};

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string run_name;
  long seed = 1;
  long threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--config", c.config_path, "JSON config (flat dotted keys)");
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--name", c.run_name, "output basename");
  cmd->add_option("--seed", c.seed, "base RNG seed");
  cmd->add_option("--threads", c.threads, "worker threads for seed sweeps");
}

void register_landscape_keys(Params& p) {
  for (const char* k :
       {"landscape.name", "landscape.L", "landscape.a", "landscape.b",
        "landscape.u0", "landscape.seed", "landscape.order", "landscape.amp"})
    p.register_key(k);
}

sg::Landscape landscape_from(const Params& p) {
  sg::LandscapeParams lp;
  lp.L = p.get_double("landscape.L", 1.0);
  lp.a = p.get_double("landscape.a", 1.0);
  lp.b = p.get_double("landscape.b", 0.55);
  lp.u0 = p.get_double("landscape.u0", 3.0);
  lp.seed = static_cast<std::uint64_t>(p.get_int("landscape.seed", 1));
  lp.order = static_cast<int>(p.get_int("landscape.order", 4));
  lp.amp = p.get_double("landscape.amp", 1.0);
  return sg::builtin_landscape(p.get_string("landscape.name", "two_well"), lp);
}

void register_potential_keys(Params& p) {
  p.register_key("potential.m");
  p.register_key("potential.family");
}

sg::PotentialSpec potential_from(const Params& p) {
  const std::string family = p.get_string("potential.family", "power");
  if (family == "boltzmann") return sg::PotentialSpec::boltzmann();
  if (family != "power")
    throw ConfigError("potential.family must be 'power' or 'boltzmann'");
  return sg::PotentialSpec::power_glued(p.get_double("potential.m", 0.25));
}

void register_schedule_keys(Params& p) {
  for (const char* k : {"schedule.kind", "schedule.beta", "schedule.k",
                        "schedule.gamma", "schedule.alpha", "schedule.t0"})
    p.register_key(k);
}

sg::Schedule schedule_from(const Params& p, double default_beta = 5.0) {
  const std::string kind = p.get_string("schedule.kind", "constant");
  if (kind == "constant")
    return sg::Schedule::constant(p.get_double("schedule.beta", default_beta));
  if (kind != "power")
    throw ConfigError("schedule.kind must be 'constant' or 'power'");
  const double k = p.get_double("schedule.k", 1.0);
  const double t0 = p.get_double("schedule.t0", 1.0);
  if (p.has("schedule.alpha"))
    return sg::Schedule::power_exponent(k, p.get_double("schedule.alpha", 0.1),
                                        t0);
  return sg::Schedule::power(k, p.get_double("schedule.gamma", 10.5), t0);
}

std::filesystem::path output_path(const CommonOpts& c,
                                  const std::string& default_name) {
  std::filesystem::create_directories(c.out_dir);
  const std::string name = c.run_name.empty() ? default_name : c.run_name;
  return std::filesystem::path(c.out_dir) / (name + ".csv");
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

// ---------------------------------------------------------------- stationary

int run_stationary(const CommonOpts& common, Params& params) {
  Timer timer;
  const sg::Landscape land = landscape_from(params);
  const sg::PotentialSpec spec = potential_from(params);
  const double beta = params.get_double("beta", 5.0);
  const int n = static_cast<int>(params.get_int("grid.n", 2048));

  const sg::StationaryMeasure mu = sg::solve_stationary(spec, land, beta, n);
  const double gap_v = sg::relaxation_gap(spec, land, beta, n);

  const auto path = output_path(common, "stationary");
  sg::CsvWriter csv(path, {"x", "u", "mu"});
  const auto xs = sg::grid_centers(n, land.period);
  for (int i = 0; i < n; ++i) csv.row({xs[i], land.u1(xs[i]), mu.values[i]});
  csv.close();

  ordered_json summary;
  summary["beta"] = beta;
  summary["c_star"] = mu.c_star;
  summary["mu_min"] = mu.mu_min;
  summary["mu_max"] = mu.mu_max;
  summary["gap"] = gap_v;
  sg::write_manifest(path, "stationary", params.snapshot(), summary,
                     timer.seconds());
  return 0;
}

// ----------------------------------------------------------------------- pde

int run_pde(const CommonOpts& common, Params& params) {
  Timer timer;
  const sg::Landscape land = landscape_from(params);
  const sg::PotentialSpec spec = potential_from(params);
  const sg::Schedule schedule = schedule_from(params);
  const int n = static_cast<int>(params.get_int("grid.n", 1024));
  const double t_end = params.get_double("pde.t_end", 1.0);

  sg::EvolveOptions opts;
  const std::string method = params.get_string("pde.method", "semi_implicit");
  if (method == "explicit")
    opts.method = sg::StepMethod::explicit_euler;
  else if (method == "semi_implicit")
    opts.method = sg::StepMethod::semi_implicit;
  else
    throw ConfigError("pde.method must be 'explicit' or 'semi_implicit'");
  const std::string dtp = params.get_string("pde.dt_policy", "advective_cfl");
  if (dtp == "explicit_cfl")
    opts.dt_policy.kind = sg::DtPolicy::Kind::explicit_cfl;
  else if (dtp == "advective_cfl")
    opts.dt_policy.kind = sg::DtPolicy::Kind::advective_cfl;
  else if (dtp == "fixed")
    opts.dt_policy.kind = sg::DtPolicy::Kind::fixed;
  else if (dtp == "quasi_static")
    opts.dt_policy.kind = sg::DtPolicy::Kind::quasi_static;
  else
    throw ConfigError("pde.dt_policy: unknown policy " + dtp);
  opts.dt_policy.dt = params.get_double("pde.dt", 1e-4);
  opts.dt_policy.safety = params.get_double("pde.safety", 0.4);
  opts.dt_policy.growth = params.get_double("pde.growth", 0.005);
  opts.dt_policy.dt_min = params.get_double("pde.dt_min", 1e-5);
  opts.dt_policy.dt_max = params.get_double("pde.dt_max", 2.0);
  opts.snapshot_stride = params.get_double("pde.stride", t_end / 50.0);
  opts.track_energy_every_step =
      schedule.kind == sg::Schedule::Kind::constant &&
      params.get_int("pde.track_energy", 1) != 0;

  sg::GridDensity state = sg::uniform_density(n, land.period);
  sg::Pde1dSolver solver(spec, land, n);

  const std::vector<double> dump_times =
      parse_double_list(params.get_string("pde.dump_times", ""));

  sg::PdeRunStats stats;
  std::vector<sg::PdeSnapshot> rows;
  double t_prev = 0.0;
  auto run_until = [&](double t_target) {
    if (t_target <= t_prev) return;
    auto part = solver.evolve(state, schedule, t_target, opts, &stats);
    rows.insert(rows.end(), part.begin() + (rows.empty() ? 0 : 1), part.end());
    t_prev = t_target;
  };
  for (double td : dump_times) {
    run_until(std::min(td, t_end));
    const auto ppath =
        output_path(common, "pde_profile_t" + sg::format_double(state.t));
    sg::CsvWriter pcsv(ppath, {"x", "rho"});
    const auto xs = sg::grid_centers(n, land.period);
    for (int i = 0; i < n; ++i) pcsv.row({xs[i], state.rho[i]});
    pcsv.close();
    sg::write_manifest(ppath, "pde-profile", params.snapshot(),
                       ordered_json{{"t", state.t}}, timer.seconds());
  }
  run_until(t_end);

  const auto path = output_path(common, "pde");
  sg::CsvWriter csv(path, {"t", "beta", "I", "J", "mean_U", "L1_dist_to_mu"});
  for (const auto& r : rows)
    csv.row({r.t, r.beta, r.energy, r.production, r.mean_u,
             r.l1_to_stationary});
  csv.close();

  ordered_json summary;
  summary["steps"] = stats.steps;
  summary["floor_hits"] = stats.floor_hits;
  summary["max_energy_increase"] = stats.max_energy_increase;
  summary["max_mass_drift"] = stats.max_mass_drift;
  summary["final_energy"] = rows.back().energy;
  summary["final_l1_to_mu"] = rows.back().l1_to_stationary;
  sg::write_manifest(path, "pde", params.snapshot(), summary, timer.seconds());
  return 0;
}

// --------------------------------------------------------------------- swarm

int run_swarm_cmd(const CommonOpts& common, Params& params) {
  Timer timer;
  const sg::Landscape land = landscape_from(params);
  const sg::PotentialSpec spec = potential_from(params);
  const sg::Schedule schedule = schedule_from(params);
  const int N = static_cast<int>(params.get_int("swarm.N", 1000));
  const double h = params.get_double("swarm.h", 0.02);
  const double dt = params.get_double("swarm.dt", 1e-3);
  const double t_end = params.get_double("swarm.t_end", 10.0);
  const int seeds = static_cast<int>(params.get_int("swarm.seeds", 1));

  sg::RunSwarmOptions opts;
  opts.snapshot_stride = params.get_double("swarm.stride", t_end / 20.0);
  opts.basin_radius = params.get_double("swarm.basin_radius", 0.25);
  opts.kde_grid_n = static_cast<int>(params.get_int("swarm.kde_grid_n", 0));
  opts.kde_refresh_stride =
      static_cast<int>(params.get_int("swarm.kde_stride", 1));
  opts.em.alpha_cap = params.get_double("swarm.alpha_cap", 1e3);
  opts.em.floor_eps = params.get_double("swarm.floor_eps", 1e-12);
  opts.h_policy.h0 = h;
  const double hq = params.get_double("swarm.h_decay_q", 0.0);
  if (hq > 0.0) {
    opts.h_policy.kind = sg::HPolicy::Kind::power_decay;
    opts.h_policy.q = hq;
  }

  const sg::Kernel kernel = sg::Kernel::bump();

  struct SeedRun {
    std::vector<sg::SwarmSnapshot> rows;
  };
  std::vector<SeedRun> runs(seeds);
  const int threads =
      std::max(1, static_cast<int>(std::min<long>(common.threads, seeds)));
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= seeds) return;
      sg::SwarmState st = sg::init_uniform_swarm(
          N, land.dim, land.period, h,
          static_cast<std::uint64_t>(common.seed) + s);
      runs[s].rows = sg::run_swarm(st, spec, land, kernel, schedule, t_end, dt,
                                   opts);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const auto path = output_path(common, "swarm");
  sg::CsvWriter csv(path, {"seed", "t", "beta", "h", "N", "mean_U",
                           "basin_fraction", "kde_l1_to_mu",
                           "alpha_cap_hits"});
  for (int s = 0; s < seeds; ++s)
    for (const auto& r : runs[s].rows)
      csv.row({static_cast<double>(common.seed + s), r.t, r.beta, r.h,
               static_cast<double>(r.count), r.mean_u, r.basin_fraction,
               r.kde_l1_to_stationary, static_cast<double>(r.alpha_cap_hits)});
  csv.close();

  ordered_json summary;
  double mean_basin = 0.0;
  for (int s = 0; s < seeds; ++s)
    mean_basin += runs[s].rows.back().basin_fraction;
  summary["seeds"] = seeds;
  summary["mean_final_basin_fraction"] = mean_basin / seeds;
  sg::write_manifest(path, "swarm", params.snapshot(), summary,
                     timer.seconds());
  return 0;
}

// ------------------------------------------------------------------ check-fi

int run_check_fi(const CommonOpts& common, Params& params, bool assert_pass) {
  Timer timer;
  const sg::Landscape land = landscape_from(params);
  const int n = static_cast<int>(params.get_int("grid.n", 2048));
  const int seeds = static_cast<int>(params.get_int("fi.seeds", 16));
  const double slack = params.get_double("fi.slack", 1e-3);
  const auto betas =
      parse_double_list(params.get_string("fi.betas", "1,5,20"));
  const auto ms =
      parse_double_list(params.get_string("fi.ms", "0.1,0.25,0.4"));

  const auto entries = sg::functional_inequality_sweep(
      land, betas, ms, seeds, n, static_cast<std::uint64_t>(common.seed),
      slack);

  const auto path = output_path(common, "check_fi");
  sg::CsvWriter csv(path,
                    {"seed", "beta", "m", "I", "J", "rhs", "ratio", "pass"});
  int passes = 0, refinements = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) {
    csv.row({static_cast<double>(e.seed & 0xffffffff), e.beta, e.m, e.energy,
             e.production, e.rhs, e.ratio, e.pass ? 1.0 : 0.0});
    passes += e.pass;
    refinements += e.refined;
    if (e.ratio < min_ratio) min_ratio = e.ratio;
  }
  csv.close();

  ordered_json summary;
  summary["checks"] = entries.size();
  summary["passes"] = passes;
  summary["refinements"] = refinements;
  summary["min_ratio"] = min_ratio;
  sg::write_manifest(path, "check-fi", params.snapshot(), summary,
                     timer.seconds());
  if (assert_pass && passes != static_cast<int>(entries.size())) return 4;
  return 0;
}

// ----------------------------------------------------------------- talagrand

int run_talagrand(const CommonOpts& common, Params& params) {
  Timer timer;
  const sg::Landscape land = landscape_from(params);
  const int n = static_cast<int>(params.get_int("grid.n", 1024));
  const int seeds = static_cast<int>(params.get_int("talagrand.seeds", 8));
  const double kappa = params.get_double("talagrand.kappa", 1.0);
  const auto betas =
      parse_double_list(params.get_string("fi.betas", "1,5,20"));
  const auto ms =
      parse_double_list(params.get_string("fi.ms", "0.1,0.25,0.4"));

  const auto path = output_path(common, "talagrand");
  sg::CsvWriter csv(path,
                    {"seed", "beta", "m", "I", "W2", "rhs", "ratio", "pass"});
  sg::CounterRng amp_rng(static_cast<std::uint64_t>(common.seed) ^ 0xa3f1);
  int passes = 0, total = 0;
  for (double m : ms) {
    const auto spec = sg::PotentialSpec::power_glued(m);
    for (double beta : betas) {
      const auto mu = sg::solve_stationary(spec, land, beta, n);
      for (int s = 0; s < seeds; ++s) {
        const std::uint64_t seed = sg::mix64(
            static_cast<std::uint64_t>(common.seed) + 977 * total + s);
        const double amplitude = 0.05 + 2.45 * amp_rng.uniform(seed);
        sg::GridDensity rho;
        rho.n = n;
        rho.L = mu.L;
        rho.rho = sg::random_density_like(mu, seed, amplitude);
        const auto chk = sg::check_talagrand(rho, mu, spec, kappa);
        csv.row({static_cast<double>(seed & 0xffffffff), beta, m, chk.energy,
                 chk.w2, chk.rhs, chk.ratio, chk.pass ? 1.0 : 0.0});
        passes += chk.pass;
        ++total;
      }
    }
  }
  csv.close();

  ordered_json summary;
  summary["checks"] = total;
  summary["passes"] = passes;
  summary["kappa_tal"] = kappa;
  sg::write_manifest(path, "talagrand", params.snapshot(), summary,
                     timer.seconds());
  return 0;
}

// ------------------------------------------------------------------ lyapunov

int run_lyapunov(const CommonOpts& common, Params& params) {
  Timer timer;
  const sg::PotentialSpec spec = potential_from(params);
  const sg::Schedule schedule = schedule_from(params, 1.0);
  const double v0 = params.get_double("lyapunov.v0", 1.0);
  const double delta = params.get_double("lyapunov.delta", 2.0);
  const double t_end = params.get_double("lyapunov.t_end", 1e6);
  const double kappa = params.get_double("lyapunov.kappa", 1.0);
  const double gamma_c = params.get_double("lyapunov.gamma_c", spec.gamma());

  auto c_map = [kappa, gamma_c](double beta) {
    return kappa * sg::pow_rt(beta, -gamma_c);
  };
  auto omega = [&spec](double r) { return spec.omega_big(r); };
  const auto pts =
      sg::lyapunov_bound(v0, schedule, c_map, omega, delta, t_end);

  const auto path = output_path(common, "lyapunov");
  sg::CsvWriter csv(path, {"t", "v", "beta"});
  for (const auto& p : pts) csv.row({p.t, p.v, p.beta});
  csv.close();

  ordered_json summary;
  summary["v_end"] = pts.back().v;
  sg::write_manifest(path, "lyapunov", params.snapshot(), summary,
                     timer.seconds());
  return 0;
}

// --------------------------------------------------------- schedule-validate

int run_schedule_validate(const CommonOpts& common, Params& params) {
  Timer timer;
  const sg::PotentialSpec spec = potential_from(params);
  const sg::Landscape land = landscape_from(params);
  const sg::Schedule schedule = schedule_from(params, 1.0);
  const double horizon = params.get_double("validate.horizon", 1e9);

  const auto c_map = sg::dissipation_rate_map(spec, land.osc, land.period);
  const auto rep = sg::validate_schedule(schedule, c_map, horizon);

  const auto path = output_path(common, "schedule_validate");
  sg::CsvWriter csv(path, {"t", "ratio", "partial_integral"});
  for (std::size_t i = 0; i < rep.ratios.size(); ++i)
    csv.row({rep.ratios[i].t, rep.ratios[i].ratio,
             i < rep.partials.size() ? rep.partials[i].integral : -1.0});
  csv.close();

  ordered_json summary;
  summary["schedule"] = schedule.describe();
  summary["ratio_vanishes"] = rep.ratio_vanishes;
  summary["integral_diverges"] = rep.integral_diverges;
  summary["no_cooling"] = rep.no_cooling;
  summary["pass"] = rep.pass;
  summary["message"] = rep.message;
  sg::write_manifest(path, "schedule-validate", params.snapshot(), summary,
                     timer.seconds());
  std::cout << (rep.pass ? "PASS" : "FAIL") << ": " << rep.message << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarm gradient dynamics toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  Params params;
  register_landscape_keys(params);
  register_potential_keys(params);
  register_schedule_keys(params);
  for (const char* k :
       {"beta", "grid.n", "pde.t_end", "pde.method", "pde.dt_policy",
        "pde.dt", "pde.safety", "pde.growth", "pde.dt_min", "pde.dt_max",
        "pde.stride", "pde.track_energy", "pde.dump_times", "swarm.N",
        "swarm.h", "swarm.dt", "swarm.t_end", "swarm.seeds", "swarm.stride",
        "swarm.basin_radius", "swarm.kde_grid_n", "swarm.kde_stride",
        "swarm.alpha_cap", "swarm.floor_eps", "swarm.h_decay_q", "fi.seeds",
        "fi.slack", "fi.betas", "fi.ms", "talagrand.seeds", "talagrand.kappa",
        "lyapunov.v0", "lyapunov.delta", "lyapunov.t_end", "lyapunov.kappa",
        "lyapunov.gamma_c", "validate.horizon"})
    params.register_key(k);

  // Convenience flags shared by the subcommands; each maps onto a config key.
  std::map<std::string, std::string> flag_values;
  auto add_key_flag = [&](CLI::App* cmd, const std::string& flag,
                          const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&flag_values, key](const std::string& v) { flag_values[key] = v; },
        help);
  };

  auto* c_stationary = app.add_subcommand("stationary",
                                          "solve the stationary density");
  auto* c_pde = app.add_subcommand("pde", "evolve the density PDE");
  auto* c_swarm = app.add_subcommand("swarm", "run the particle system");
  auto* c_fi = app.add_subcommand("check-fi",
                                  "randomized functional-inequality sweep");
  auto* c_tal = app.add_subcommand("talagrand",
                                   "transport-inequality sweep");
  auto* c_lyap = app.add_subcommand("lyapunov", "schedule comparison ODE");
  auto* c_sched = app.add_subcommand("schedule-validate",
                                     "check the convergence conditions");
  bool assert_pass = false;
  c_fi->add_flag("--assert", assert_pass,
                 "exit 4 unless every check passes");

  for (CLI::App* cmd :
       {c_stationary, c_pde, c_swarm, c_fi, c_tal, c_lyap, c_sched}) {
    add_common(cmd, common);
    add_key_flag(cmd, "--landscape", "landscape.name", "landscape name");
    add_key_flag(cmd, "--m", "potential.m", "potential exponent");
    add_key_flag(cmd, "--beta", "beta", "fixed beta");
    add_key_flag(cmd, "--fixed-beta", "schedule.beta",
                 "constant schedule level");
    add_key_flag(cmd, "--schedule", "schedule.kind", "constant | power");
    add_key_flag(cmd, "--k", "schedule.k", "power schedule scale");
    add_key_flag(cmd, "--gamma", "schedule.gamma", "power schedule gamma");
    add_key_flag(cmd, "--alpha", "schedule.alpha", "power schedule exponent");
    add_key_flag(cmd, "--n", "grid.n", "grid cells");
    add_key_flag(cmd, "--t-end", cmd == c_swarm ? "swarm.t_end" : "pde.t_end",
                 "time horizon");
    add_key_flag(cmd, "--N", "swarm.N", "particle count");
    add_key_flag(cmd, "--h", "swarm.h", "KDE bandwidth");
    add_key_flag(cmd, "--dt", cmd == c_swarm ? "swarm.dt" : "pde.dt",
                 "time step");
    add_key_flag(cmd, "--seeds",
                 cmd == c_fi ? "fi.seeds"
                             : (cmd == c_tal ? "talagrand.seeds"
                                             : "swarm.seeds"),
                 "seed count");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!common.config_path.empty()) params.load_file(common.config_path);
    for (const auto& [key, value] : flag_values) {
      // numeric-looking flags become numbers, everything else stays a string
      try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos == value.size()) {
          if (d == static_cast<long>(d) &&
              value.find_first_of(".eE") == std::string::npos)
            params.set(key, static_cast<long>(d));
          else
            params.set(key, d);
          continue;
        }
      } catch (const std::invalid_argument&) {
      }
      params.set(key, value);
    }

    if (app.got_subcommand(c_stationary)) return run_stationary(common, params);
    if (app.got_subcommand(c_pde)) return run_pde(common, params);
    if (app.got_subcommand(c_swarm)) return run_swarm_cmd(common, params);
    if (app.got_subcommand(c_fi))
      return run_check_fi(common, params, assert_pass);
    if (app.got_subcommand(c_tal)) return run_talagrand(common, params);
    if (app.got_subcommand(c_lyap)) return run_lyapunov(common, params);
    if (app.got_subcommand(c_sched))
      return run_schedule_validate(common, params);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << R"({"error":"config","message":")" << e.what() << "\"}\n";
    return 2;
  } catch (const sg::NumericalAbort& e) {
    std::cerr << R"({"error":"numerical","message":")" << e.what() << "\"}\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << R"({"error":"config","message":")" << e.what() << "\"}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << R"({"error":"internal","message":")" << e.what() << "\"}\n";
    return 1;
  }
}
