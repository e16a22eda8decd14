#include "cmpairs/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cmpairs/fit.hpp"
#include "cmpairs/io.hpp"
#include "cmpairs/parallel.hpp"
#include "cmpairs/version.hpp"

namespace cmpairs {

namespace {

std::vector<Complex> complex_list(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    try {
      out.push_back(complex_from_json(e));
    } catch (const std::exception& ex) {
      throw ConfigError(what + ": " + ex.what());
    }
  }
  return out;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

std::vector<double> sample_times(double t_end, int count) {
  std::vector<double> ts;
  ts.reserve(count);
  for (int k = 0; k < count; ++k) ts.push_back(t_end * k / double(count - 1));
  ts.back() = t_end;
  return ts;
}

nlohmann::json report_skeleton(const ScenarioConfig& cfg) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["mode"] = cfg.mode;
  j["config_hash"] = cfg.config_hash;
  j["seed"] = cfg.seed;
  return j;
}

void finish_report(const ScenarioConfig& cfg, nlohmann::json& rep,
                   const std::vector<CheckResult>& verdicts) {
  rep["verdicts"] = checks_to_json(verdicts);
  write_json_file((std::filesystem::path(cfg.out_dir) / "report.json").string(), rep);
}

// ---- mode drivers ---------------------------------------------------------

int run_full(const ScenarioConfig& cfg, const Lattice& lat, std::ostream& out) {
  CMState s0{cfg.x0, cfg.p0};
  IntegrateOptions opts;
  opts.sample_times = sample_times(cfg.t_end, cfg.sample_count);
  const Trajectory traj = integrate_cm(lat, cfg.flow, s0, cfg.t_end, cfg.tol, opts);

  const auto h0 = hamiltonians(lat, s0);
  double drift = 0.0;
  for (const auto& y : traj.states) {
    const auto h = hamiltonians(lat, unpack_cm(y));
    for (int a = 0; a < 3; ++a) drift = std::max(drift, rel_drift(h[a], h0[a]));
  }

  const std::filesystem::path dir(cfg.out_dir);
  if (cfg.write_csv) write_trajectory_csv((dir / "trajectory.csv").string(), traj, StateKind::Full);
  nlohmann::json rep = report_skeleton(cfg);
  if (cfg.write_json) {
    nlohmann::json tj = trajectory_to_json(traj, StateKind::Full);
    tj["config_hash"] = cfg.config_hash;
    write_json_file((dir / "trajectory.json").string(), tj);
  }
  rep["data"]["hamiltonians_t0"] =
      nlohmann::json::array({to_json(h0[0]), to_json(h0[1]), to_json(h0[2])});
  rep["data"]["accepted_steps"] = traj.stats.accepted;

  std::vector<CheckResult> verdicts;
  std::ostringstream name;
  name << "H1,H2,H3 drift along t" << cfg.flow << " flow";
  verdicts.push_back(check_leq(name.str(), drift, 1e-8, "conserved for flows 2 and 3"));
  finish_report(cfg, rep, verdicts);
  const int failed = print_check_table(verdicts, out);
  return failed == 0 ? kExitOk : kExitNumericalFailure;
}

int run_reduced(const ScenarioConfig& cfg, const Lattice& lat, std::ostream& out) {
  const ReducedState r0{cfg.rx0, cfg.ralpha0};
  IntegrateOptions opts;
  opts.sample_times = sample_times(cfg.t_end, cfg.sample_count);
  const Trajectory traj = integrate_reduced(lat, r0, cfg.t_end, cfg.tol, opts);

  double worst_res = 0.0;
  for (const auto& y : traj.states) {
    const ReducedState r = unpack_reduced(y);
    const ReducedTangent t = reduced_rhs(lat, r);
    const auto acc = reduced_accel(lat, r);
    for (const Complex& v : second_order_residual(lat, r.x, t.dx, acc)) {
      worst_res = std::max(worst_res, std::abs(v));
    }
  }

  const std::filesystem::path dir(cfg.out_dir);
  if (cfg.write_csv) {
    write_trajectory_csv((dir / "trajectory.csv").string(), traj, StateKind::Reduced);
  }
  if (cfg.write_json) {
    nlohmann::json tj = trajectory_to_json(traj, StateKind::Reduced);
    tj["config_hash"] = cfg.config_hash;
    write_json_file((dir / "trajectory.json").string(), tj);
  }
  nlohmann::json rep = report_skeleton(cfg);
  rep["data"]["accepted_steps"] = traj.stats.accepted;

  std::vector<CheckResult> verdicts;
  verdicts.push_back(check_leq("second-order pole-equation residual along trajectory", worst_res,
                               1e-8));
  finish_report(cfg, rep, verdicts);
  const int failed = print_check_table(verdicts, out);
  return failed == 0 ? kExitOk : kExitNumericalFailure;
}

int run_compare(const ScenarioConfig& cfg, const Lattice& lat, std::ostream& out) {
  const ReducedState r0{cfg.rx0, cfg.ralpha0};
  const int n = r0.n_pairs();
  nlohmann::json rep = report_skeleton(cfg);
  std::vector<CheckResult> verdicts;

  // Stickiness of the embedded pairs under the t3 flow.
  const StickinessReport srep =
      stickiness_report(lat, r0, cfg.eps_ladder, cfg.t_end, cfg.tol, cfg.jobs);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : srep.entries) {
    nlohmann::json je;
    je["eps"] = e.eps;
    je["t3_psum_rate"] = e.t3_psum_rate;
    je["t3_sep_rate"] = e.t3_sep_rate;
    je["t2_sep_rate"] = e.t2_sep_rate;
    je["max_sep_dev"] = e.max_sep_dev;
    je["max_psum"] = e.max_psum;
    je["integrated"] = e.integrated;
    if (!e.error.empty()) je["error"] = e.error;
    entries.push_back(std::move(je));
  }
  rep["data"]["stickiness"] = {{"entries", std::move(entries)},
                               {"slope_psum_rate", srep.slope_psum_rate},
                               {"slope_sep_dev", srep.slope_sep_dev},
                               {"slope_max_psum", srep.slope_max_psum}};
  verdicts.push_back(check_geq("pair momentum-sum rate scaling vs eps", srep.slope_psum_rate, 1.9,
                               "t3 flow on embedded states"));
  for (const auto& e : srep.entries) {
    const double scaled = e.t2_sep_rate * e.eps;
    std::ostringstream nm;
    nm << "t2 separation growth rate ~ 4/eps (eps=" << format_double(e.eps) << ")";
    CheckResult c = check_leq(nm.str(), std::abs(scaled - 4.0), 0.1, "pairing destroyed");
    verdicts.push_back(std::move(c));
  }

  // Convergence of projected full trajectories to the reduced flow.
  IntegrateOptions opts;
  opts.sample_times = {cfg.t_end};
  const Trajectory red = integrate_reduced(lat, r0, cfg.t_end, cfg.tol, opts);
  const ReducedState r_end = unpack_reduced(red.states.back());
  std::vector<double> errs(cfg.eps_ladder.size(), 0.0);
  std::vector<std::string> errors(cfg.eps_ladder.size());
  parallel_for(int(cfg.eps_ladder.size()), cfg.jobs, [&](int k) {
    try {
      const CMState s0 = embed(lat, r0, cfg.eps_ladder[k]);
      const Trajectory full = integrate_cm(lat, 3, s0, cfg.t_end, cfg.tol, opts);
      const ReducedState proj = project(unpack_cm(full.states.back()), cfg.eps_ladder[k]);
      for (int i = 0; i < n; ++i) errs[k] = std::max(errs[k], std::abs(proj.x[i] - r_end.x[i]));
    } catch (const std::exception& ex) {
      errors[k] = ex.what();
      errs[k] = -1.0;
    }
  });
  nlohmann::json conv = nlohmann::json::array();
  std::vector<double> eps_ok, errs_ok;
  for (size_t k = 0; k < errs.size(); ++k) {
    nlohmann::json je;
    je["eps"] = cfg.eps_ladder[k];
    if (errs[k] >= 0.0) {
      je["position_error"] = errs[k];
      eps_ok.push_back(cfg.eps_ladder[k]);
      errs_ok.push_back(errs[k]);
    } else {
      je["error"] = errors[k];
    }
    conv.push_back(std::move(je));
  }
  const double slope = eps_ok.size() >= 2 ? loglog_slope(eps_ok, errs_ok) : 0.0;
  rep["data"]["reduction_convergence"] = {{"entries", std::move(conv)},
                                          {"slope", slope},
                                          {"t_end", cfg.t_end}};
  verdicts.push_back(
      check_geq("projected full trajectories converge to reduced flow", slope, 0.9));
  if (n == 1) {
    const Complex expect = r0.x[0] - 6.0 * r0.alpha[0] * cfg.t_end;
    verdicts.push_back(check_leq("n=1 reduced trajectory is x0 - 6 alpha t",
                                 std::abs(r_end.x[0] - expect), 10.0 * cfg.tol));
  }

  finish_report(cfg, rep, verdicts);
  const int failed = print_check_table(verdicts, out);
  return failed == 0 ? kExitOk : kExitNumericalFailure;
}

int run_spectral(const ScenarioConfig& cfg, const Lattice& lat, std::ostream& out) {
  const ReducedState r0{cfg.rx0, cfg.ralpha0};
  const int n = r0.n_pairs();
  const std::filesystem::path dir(cfg.out_dir);
  nlohmann::json rep = report_skeleton(cfg);
  std::vector<CheckResult> verdicts;

  const SpectralScan limit_scan =
      scan_spectral_limit(lat, r0, cfg.z_grid, cfg.lambda_grid, cfg.eps_ladder, cfg.jobs);
  const SpectralScan bkp_scan = scan_bkp_det(lat, r0, cfg.z_grid, cfg.lambda_grid, cfg.jobs);
  if (cfg.write_csv) {
    write_scan_csv((dir / "spectral_limit.csv").string(), limit_scan);
    write_scan_csv((dir / "bkp_det.csv").string(), bkp_scan);
  }
  if (cfg.write_json) {
    write_json_file((dir / "spectral_limit.json").string(), scan_to_json(limit_scan));
    write_json_file((dir / "bkp_det.json").string(), scan_to_json(bkp_scan));
  }

  if (n == 1) {
    double worst = 0.0;
    for (size_t iz = 0; iz < cfg.z_grid.size(); ++iz) {
      for (size_t il = 0; il < cfg.lambda_grid.size(); ++il) {
        const Complex closed =
            cfg.z_grid[iz] * cfg.z_grid[iz] - 2.0 * r0.alpha[0] - wp(lat, cfg.lambda_grid[il]);
        worst = std::max(worst, rel_err(limit_scan.det_values[iz][il], closed));
      }
    }
    verdicts.push_back(
        check_leq("n=1 extrapolated determinant equals z^2 - 2 alpha - wp(lambda)", worst, 1e-8));
  }

  // Conservation of the pole-dynamics determinant along the reduced flow.
  {
    IntegrateOptions opts;
    for (int k = 0; k <= 10; ++k) opts.sample_times.push_back(cfg.t_end * k / 10.0);
    const Trajectory traj = integrate_reduced(lat, r0, cfg.t_end, cfg.tol, opts);
    double drift = 0.0;
    for (size_t iz = 0; iz < cfg.z_grid.size(); ++iz) {
      for (size_t il = 0; il < cfg.lambda_grid.size(); ++il) {
        const Complex d0 =
            det(lax_bkp(lat, unpack_reduced(traj.states.front()), cfg.z_grid[iz],
                        cfg.lambda_grid[il]));
        for (const auto& y : traj.states) {
          const Complex d = det(lax_bkp(lat, unpack_reduced(y), cfg.z_grid[iz],
                                        cfg.lambda_grid[il]));
          drift = std::max(drift, rel_drift(d, d0));
        }
      }
    }
    verdicts.push_back(check_leq("pole-dynamics determinant conserved along reduced flow", drift,
                                 1e-6, "all grid (z, lambda) pairs"));
  }

  // Zero-locus comparison at each lambda: an experiment, reported only.
  if (n <= 4) {
    nlohmann::json experiments = nlohmann::json::array();
    for (const Complex lam : cfg.lambda_grid) {
      const ZeroLocusReport zrep = zero_locus_experiment(lat, r0, lam, cfg.eps_ladder);
      nlohmann::json je;
      je["lambda"] = to_json(lam);
      nlohmann::json rl = nlohmann::json::array(), rb = nlohmann::json::array();
      for (const Complex& z : zrep.roots_limit) rl.push_back(to_json(z));
      for (const Complex& z : zrep.roots_bkp) rb.push_back(to_json(z));
      je["roots_limit"] = std::move(rl);
      je["roots_bkp"] = std::move(rb);
      je["max_dist_direct"] = zrep.max_dist_direct;
      je["max_dist_negated"] = zrep.max_dist_negated;
      experiments.push_back(std::move(je));
    }
    rep["data"]["zero_locus_experiments"] = std::move(experiments);
  }

  finish_report(cfg, rep, verdicts);
  const int failed = print_check_table(verdicts, out);
  return failed == 0 ? kExitOk : kExitNumericalFailure;
}

int run_selftest(const ScenarioConfig& cfg, const Lattice& lat, std::ostream& out,
                 bool elliptic_only) {
  const unsigned seed = unsigned(cfg.seed);
  std::vector<CheckResult> all;
  auto append = [&all](std::vector<CheckResult> v) {
    for (auto& c : v) all.push_back(std::move(c));
  };
  out << "lattice: 2*omega1 = " << 2.0 * lat.omega1() << ", 2*omega2 = " << 2.0 * lat.omega2()
      << ", seed " << seed << "\n";
  append(elliptic_identity_checks(lat, seed));
  append(elliptic_oracle_checks(lat, seed + 1));
  append(phi_expansion_checks(lat, seed + 2));
  if (!elliptic_only) {
    append(integrability_checks(lat, seed + 3));
    append(stickiness_checks(lat, seed + 4, cfg.jobs));
    append(reduction_convergence_checks(lat, seed + 5, cfg.jobs));
    append(residual_checks(lat, seed + 6));
    append(t2_destruction_checks(lat, seed + 7));
    append(spectral_limit_checks(lat, seed + 8));
    append(det_conservation_checks(lat, seed + 9));
    append(zero_locus_report_checks(lat, seed + 10));
  }
  nlohmann::json rep = report_skeleton(cfg);
  finish_report(cfg, rep, all);
  const int failed = print_check_table(all, out);
  out << (failed == 0 ? "all checks passed" : "FAILED checks: " + std::to_string(failed)) << "\n";
  return failed == 0 ? kExitOk : kExitNumericalFailure;
}

}  // namespace

ScenarioConfig default_config(const std::string& mode) {
  ScenarioConfig cfg;
  cfg.mode = mode;
  cfg.config_hash = fnv1a_hex("default:" + mode);
  return cfg;
}

ScenarioConfig load_config(const std::string& path, const std::string& mode_override) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }

  ScenarioConfig cfg;
  cfg.config_hash = fnv1a_hex(j.dump());

  if (j.contains("lattice")) {
    const auto& l = j["lattice"];
    require(l.is_object(), "lattice must be an object with omega1/omega2");
    if (l.contains("omega1")) cfg.omega1 = complex_from_json(l["omega1"]);
    if (l.contains("omega2")) cfg.omega2 = complex_from_json(l["omega2"]);
  }
  if (j.contains("mode")) {
    require(j["mode"].is_string(), "mode must be a string");
    cfg.mode = j["mode"].get<std::string>();
  }
  if (!mode_override.empty()) {
    require(cfg.mode.empty() || cfg.mode == mode_override,
            "config mode '" + cfg.mode + "' conflicts with CLI mode '" + mode_override + "'");
    cfg.mode = mode_override;
  }
  require(!cfg.mode.empty(), "mode missing (set it in the config or via the CLI)");

  if (j.contains("flow")) cfg.flow = j["flow"].get<int>();
  if (j.contains("t_end")) cfg.t_end = j["t_end"].get<double>();
  if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
  if (j.contains("sample_count")) cfg.sample_count = j["sample_count"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
  if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();

  if (j.contains("initial")) {
    const auto& s = j["initial"];
    require(s.is_object() && s.contains("x") && s.contains("p"),
            "initial must carry x and p lists");
    cfg.x0 = complex_list(s["x"], "initial.x");
    cfg.p0 = complex_list(s["p"], "initial.p");
  }
  if (j.contains("initial_reduced")) {
    const auto& s = j["initial_reduced"];
    require(s.is_object() && s.contains("x") && s.contains("alpha"),
            "initial_reduced must carry x and alpha lists");
    cfg.rx0 = complex_list(s["x"], "initial_reduced.x");
    cfg.ralpha0 = complex_list(s["alpha"], "initial_reduced.alpha");
  }
  if (j.contains("eps_ladder")) {
    for (const auto& e : j["eps_ladder"]) cfg.eps_ladder.push_back(e.get<double>());
  }
  if (j.contains("z_grid")) cfg.z_grid = complex_list(j["z_grid"], "z_grid");
  if (j.contains("lambda_grid")) cfg.lambda_grid = complex_list(j["lambda_grid"], "lambda_grid");
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (o.contains("dir")) cfg.out_dir = o["dir"].get<std::string>();
    if (o.contains("csv")) cfg.write_csv = o["csv"].get<bool>();
    if (o.contains("json")) cfg.write_json = o["json"].get<bool>();
  }

  // Validation.
  const Complex tau = cfg.omega2 / cfg.omega1;
  require(tau.imag() > 0.0, "lattice: Im(omega2/omega1) must be positive");
  require(cfg.flow >= 1 && cfg.flow <= 3, "flow must be 1, 2 or 3");
  require(cfg.t_end > 0.0, "t_end must be positive");
  require(cfg.tol >= 1e-14 && cfg.tol <= 1e-3, "tol must lie in [1e-14, 1e-3]");
  require(cfg.sample_count >= 2, "sample_count must be at least 2");
  for (const double e : cfg.eps_ladder) require(e > 0.0, "eps_ladder entries must be positive");

  if (cfg.mode == "full") {
    require(!cfg.x0.empty(), "mode full requires initial.x");
    require(cfg.x0.size() == cfg.p0.size(), "initial.x and initial.p must have equal length");
  } else if (cfg.mode == "reduced" || cfg.mode == "compare" || cfg.mode == "spectral") {
    require(!cfg.rx0.empty(), "mode " + cfg.mode + " requires initial_reduced");
    require(cfg.rx0.size() == cfg.ralpha0.size(),
            "initial_reduced.x and .alpha must have equal length");
    if (cfg.mode == "compare") {
      require(cfg.eps_ladder.size() >= 2, "mode compare requires an eps_ladder (>= 2 entries)");
    }
    if (cfg.mode == "spectral") {
      require(cfg.eps_ladder.size() >= 4, "mode spectral requires an eps_ladder (>= 4 entries)");
      require(!cfg.z_grid.empty() && !cfg.lambda_grid.empty(),
              "mode spectral requires z_grid and lambda_grid");
    }
  } else if (cfg.mode != "selftest" && cfg.mode != "selftest-elliptic") {
    throw ConfigError("unknown mode: " + cfg.mode);
  }
  return cfg;
}

int run_scenario(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string stage = "setup";
  try {
    std::filesystem::create_directories(cfg.out_dir);
    const Lattice lat(cfg.omega1, cfg.omega2);
    stage = cfg.mode;
    if (cfg.mode == "full") return run_full(cfg, lat, out);
    if (cfg.mode == "reduced") return run_reduced(cfg, lat, out);
    if (cfg.mode == "compare") return run_compare(cfg, lat, out);
    if (cfg.mode == "spectral") return run_spectral(cfg, lat, out);
    if (cfg.mode == "selftest") return run_selftest(cfg, lat, out, false);
    if (cfg.mode == "selftest-elliptic") return run_selftest(cfg, lat, out, true);
    throw ConfigError("unknown mode: " + cfg.mode);
  } catch (const ConfigError& ex) {
    err << "config error: " << ex.what() << "\n";
    return kExitConfigInvalid;
  } catch (const std::invalid_argument& ex) {
    err << "config error: " << ex.what() << "\n";
    return kExitConfigInvalid;
  } catch (const std::exception& ex) {
    err << "numerical failure in stage '" << stage << "': " << ex.what() << "\n";
    return kExitNumericalFailure;
  }
}

}  // namespace cmpairs
