#include "mskrock_cli/commands.hpp"

#include "mskrock/certification.hpp"
#include "mskrock/convergence.hpp"
#include "mskrock/cost_model.hpp"
#include "mskrock/csv.hpp"
#include "mskrock/reaction_network.hpp"
#include "mskrock/refined_heat.hpp"
#include "mskrock/stability.hpp"
#include "mskrock/stages.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace mskrock::cli {
namespace fs = std::filesystem;

namespace {

constexpr const char* kLibraryVersion = "0.1.0";

std::uint64_t seed_of(const RunConfig& cfg, const RunOptions& opts) {
  if (opts.seed) return *opts.seed;
  if (cfg.has("run.seed")) return cfg.u64("run.seed");
  throw InputError("no seed given: pass --seed or set run.seed (runs are never auto-seeded)");
}

unsigned threads_of(const RunConfig& cfg, const RunOptions& opts) {
  const long long t = opts.threads ? static_cast<long long>(*opts.threads)
                                   : cfg.integer("run.threads", 1);
  if (t < 1) throw InputError("threads must be >= 1");
  return static_cast<unsigned>(t);
}

fs::path prepare_out(const RunOptions& opts) {
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec || !fs::is_directory(opts.out_dir))
    throw InputError("cannot create output directory '" + opts.out_dir.string() + "'");
  const fs::path probe = opts.out_dir / ".write-probe";
  {
    std::ofstream f(probe);
    if (!f) throw InputError("output directory '" + opts.out_dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
  return opts.out_dir;
}

Metadata base_metadata(const std::string& command, const RunConfig& cfg) {
  Metadata m;
  m["command"] = command;
  m["library_version"] = kLibraryVersion;
  m["config_version"] = std::to_string(kConfigVersion);
  for (const auto& [k, v] : cfg.flatten()) m["config." + k] = v;
  return m;
}

std::string fmt(double v) { return format_double(v); }

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string tolower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

StageControl adaptive(StageControl c) {
  c.fixed.reset();
  return c;
}

} // namespace

SplitSdeProblem make_problem(const RunConfig& cfg) {
  const std::string id = cfg.str("problem.id");
  if (id == "multirate-test") {
    const double lambda = cfg.num("problem.lambda");
    const double zeta = cfg.num("problem.zeta");
    const double mu = cfg.num("problem.mu", 0.0);
    return make_multirate_test(lambda, zeta, mu, cfg.num("problem.x0", 1.0),
                               cfg.num("problem.horizon", 1.0));
  }
  if (id == "sinh") return make_sinh_problem();
  if (id == "split-cosine")
    return make_split_cosine_ode(cfg.num("problem.y0", 1.0), cfg.num("problem.horizon", 1.0));
  if (id == "refined-heat") {
    RefinedHeatOptions o;
    o.domain_length = cfg.num("problem.domain_length", o.domain_length);
    o.source_amplitude = cfg.num("problem.source_amplitude", o.source_amplitude);
    o.source_center = cfg.num("problem.source_center", o.source_center);
    o.initial_value = cfg.num("problem.initial_value", o.initial_value);
    o.horizon = cfg.num("problem.horizon", o.horizon);
    return make_refined_heat(cfg.num("problem.delta"), cfg.num("problem.H", 1.0 / 16.0),
                             cfg.num("problem.sigma", 0.5), o);
  }
  if (id == "reaction-network") {
    ReactionNetwork net = load_reaction_network_file(cfg.resolve(cfg.str("problem.file")).string());
    if (const auto r = cfg.opt_integer("problem.fast")) net.fast_count = static_cast<int>(*r);
    if (cfg.has("problem.x0")) net.initial = cfg.num_list("problem.x0");
    if (const auto T = cfg.opt_num("problem.horizon")) net.horizon = *T;
    NetworkOptions o;
    o.falling_factorial = cfg.flag("problem.falling_factorial", false);
    return make_reaction_problem(net, o);
  }
  throw InputError("unknown problem id '" + id +
                   "' (expected multirate-test, sinh, split-cosine, refined-heat or "
                   "reaction-network)");
}

Method method_from(const RunConfig& cfg) { return parse_method(cfg.str("method.name", "mskrock")); }

StageControl stage_control_from(const RunConfig& cfg) {
  StageControl c;
  c.eps = cfg.num("method.eps", kDefaultDamping);
  c.safety = cfg.num("method.safety", kDefaultRadiusSafety);
  if (!(c.eps >= 0.0)) throw InputError("method.eps must be >= 0");
  if (!(c.safety >= 1.0)) throw InputError("method.safety must be >= 1");
  if (const auto s = cfg.opt_integer("method.s")) {
    const long long m = cfg.integer("method.m", 2);
    c.fixed = std::pair{static_cast<int>(*s), static_cast<int>(m)};
  } else if (cfg.has("method.m")) {
    throw InputError("method.m requires method.s");
  }
  c.rho_F = cfg.opt_num("method.rho_F");
  c.rho_S = cfg.opt_num("method.rho_S");
  c.reestimate_every = static_cast<int>(cfg.integer("method.reestimate_every", 1));
  const std::string mode = cfg.str("method.noise_mode", "combined");
  if (mode == "combined") c.noise_mode = NoiseMode::combined;
  else if (mode == "per-column") c.noise_mode = NoiseMode::per_column;
  else throw InputError("method.noise_mode must be combined or per-column");
  c.power.tol = cfg.num("method.power_tol", c.power.tol);
  c.power.max_iter = static_cast<int>(cfg.integer("method.power_max_iter", c.power.max_iter));
  return c;
}

CommandResult cmd_integrate(const RunConfig& cfg, const RunOptions& opts) {
  const auto problem = make_problem(cfg);
  const Method method = method_from(cfg);
  const StageControl control = stage_control_from(cfg);
  const std::uint64_t seed = seed_of(cfg, opts);
  const double tau = cfg.num("run.tau");
  const auto path_index = cfg.integer("run.path", 0);
  const auto every = cfg.integer("run.snapshot_every", 0);
  if (path_index < 0 || every < 0) throw InputError("run.path and run.snapshot_every must be >= 0");
  const fs::path dir = prepare_out(opts);

  TrajectoryIntegrator integ(problem, method, control, tau);
  const BrownianGrid grid(seed, integ.steps(), problem.noise_dim(), problem.horizon);
  const BrownianPath path = grid.path(static_cast<std::uint64_t>(path_index));

  CsvTable snap{{"step", "t", "component", "value"}, {}};
  auto add_snapshot = [&](std::size_t step, double t, std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      snap.add_row({std::to_string(step), fmt(t), std::to_string(i), fmt(x[i])});
  };
  CsvTable steps{{"step", "t", "s", "m", "eta", "rho_F", "rho_S", "n_fF", "n_fS", "n_g"}, {}};

  CommandResult res;
  add_snapshot(0, 0.0, problem.x0);
  Vector x(problem.dimension());
  PathSummary sum;
  try {
    sum = integ.run(path, x, [&](const StepRecord& r, std::span<const double> xn) {
      const auto& st = r.stats;
      steps.add_row({std::to_string(r.step), fmt(r.t), std::to_string(st.s_used),
                     std::to_string(st.m_used), fmt(st.eta), fmt(st.rho_F_est),
                     fmt(st.rho_S_est), std::to_string(st.n_fF), std::to_string(st.n_fS),
                     std::to_string(st.n_g)});
      const std::size_t k = r.step + 1;
      if (k == integ.steps() || (every > 0 && k % static_cast<std::size_t>(every) == 0))
        add_snapshot(k, static_cast<double>(k) * tau, xn);
    });
  } catch (const DivergenceError& e) {
    res.failures.push_back(std::string("divergence: ") + e.what());
  } catch (const EstimationError& e) {
    res.failures.push_back(std::string("divergence: ") + e.what());
  }

  write_csv((dir / "snapshot.csv").string(), snap);
  write_csv((dir / "steps.csv").string(), steps);
  Metadata meta = base_metadata("integrate", cfg);
  meta["seed"] = std::to_string(seed);
  meta["problem"] = problem.name;
  meta["method"] = method_name(method);
  meta["tau"] = fmt(tau);
  meta["steps"] = std::to_string(integ.steps());
  meta["path_index"] = std::to_string(path_index);
  meta["max_s"] = std::to_string(sum.max_s);
  meta["max_m"] = std::to_string(sum.max_m);
  meta["total_n_fF"] = std::to_string(sum.totals.n_fF);
  meta["total_n_fS"] = std::to_string(sum.totals.n_fS);
  meta["total_n_g"] = std::to_string(sum.totals.n_g);
  meta["status"] = res.ok() ? "ok" : "failed";
  write_metadata((dir / "metadata.txt").string(), meta);
  res.outputs = {dir / "snapshot.csv", dir / "steps.csv", dir / "metadata.txt"};
  return res;
}

CommandResult cmd_converge(const RunConfig& cfg, const RunOptions& opts) {
  const auto problem = make_problem(cfg);
  ConvergenceOptions co;
  co.method = method_from(cfg);
  co.control = stage_control_from(cfg);
  co.taus = cfg.num_list("run.taus");
  const auto paths = cfg.integer("run.paths", 0);
  if (paths < 1) throw InputError("run.paths must be >= 1");
  co.n_paths = static_cast<std::size_t>(paths);
  co.seed = seed_of(cfg, opts);
  co.threads = threads_of(cfg, opts);
  const std::string default_ref = problem.exact_solution ? "exact" : "fine-skrock";
  co.reference.kind = parse_reference(cfg.str("run.reference", default_ref));
  co.reference.refinement = static_cast<int>(cfg.integer("run.reference_refinement", 4));
  co.reference.method = parse_method(cfg.str("run.reference_method", "skrock"));
  co.reference.control =
      co.reference.kind == ReferenceKind::same_tau ? co.control : adaptive(co.control);
  const fs::path dir = prepare_out(opts);

  CommandResult res;
  Metadata meta = base_metadata("converge", cfg);
  meta["seed"] = std::to_string(co.seed);
  meta["problem"] = problem.name;
  meta["method"] = method_name(co.method);
  meta["reference"] = reference_name(co.reference.kind);
  if (co.reference.kind == ReferenceKind::fine_skrock) {
    const double fine = co.taus.back() / std::pow(2.0, co.reference.refinement);
    meta["reference_tau"] = fmt(fine);
  }
  meta["paths"] = std::to_string(co.n_paths);
  meta["threads"] = std::to_string(co.threads);

  ErrorTable table;
  try {
    table = run_convergence(problem, co);
  } catch (const PathDivergenceError& e) {
    res.failures.push_back(std::string("divergence: ") + e.what());
    meta["divergent_path"] = std::to_string(e.path());
    meta["status"] = "failed";
    write_metadata((dir / "metadata.txt").string(), meta);
    res.outputs = {dir / "metadata.txt"};
    return res;
  }
  write_error_table((dir / "errors.csv").string(), table);

  auto slope_check = [&](ErrorKind kind, const std::string& name) {
    std::optional<SlopeFit> fit;
    try {
      fit = fit_slope(table, kind);
    } catch (const InputError&) {
    }
    meta[name + "_slope"] = fit ? fmt(fit->slope) : "n/a";
    meta[name + "_intercept"] = fit ? fmt(fit->intercept) : "n/a";
    const auto lo = cfg.opt_num("checks." + name + "_slope_min");
    const auto hi = cfg.opt_num("checks." + name + "_slope_max");
    if (!lo && !hi) return;
    if (!fit) {
      res.failures.push_back(name + "_slope: fewer than 3 rows with positive error");
    } else if ((lo && fit->slope < *lo) || (hi && fit->slope > *hi)) {
      res.failures.push_back(name + "_slope: " + fmt(fit->slope) + " outside [" +
                             (lo ? fmt(*lo) : "-inf") + ", " + (hi ? fmt(*hi) : "inf") + "]");
    }
  };
  slope_check(ErrorKind::strong, "strong");
  slope_check(ErrorKind::weak, "weak");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    meta["row" + std::to_string(i) + ".mean_s"] = fmt(table.rows[i].mean_s);
    meta["row" + std::to_string(i) + ".mean_m"] = fmt(table.rows[i].mean_m);
  }
  meta["status"] = res.ok() ? "ok" : "failed";
  write_metadata((dir / "metadata.txt").string(), meta);
  res.outputs = {dir / "errors.csv", dir / "metadata.txt"};
  return res;
}

CommandResult cmd_stability_scan(const RunConfig& cfg, const RunOptions& opts) {
  const int s = static_cast<int>(cfg.integer("scan.s", 10));
  const int m = static_cast<int>(cfg.integer("scan.m", 6));
  const double eps = cfg.num("scan.eps", 0.0);
  const auto points = cfg.integer("scan.points", 1001);
  const auto per_axis = cfg.integer("scan.per_axis", 20);
  const double tau = cfg.num("scan.tau", 1.0);
  if (s < 1 || m < 2 || m % 2 != 0) throw InputError("scan.s must be >= 1 and scan.m even >= 2");
  if (points < 2 || per_axis < 2) throw InputError("scan.points and scan.per_axis must be >= 2");
  if (!(eps >= 0.0)) throw InputError("scan.eps must be >= 0");
  const fs::path dir = prepare_out(opts);
  CommandResult res;

  const auto outer = StabilityPolyParams::make(s, eps);
  const auto inner = StabilityPolyParams::make(m, eps);
  const double beta = stability_beta(eps);
  const double z_in = -beta * m * m;
  const double z_out = -beta * s * s;
  CsvTable poly{{"z_inner", "Phi_m", "Psi_r", "Psi_r_sq", "psi_sq_le_phi", "z_outer", "A_s", "B_s"},
                {}};
  std::size_t flag_failures = 0;
  for (long long i = 0; i < points; ++i) {
    const double frac = 1.0 - static_cast<double>(i) / static_cast<double>(points - 1);
    const double zi = frac * z_in + 0.0;
    const double zo = frac * z_out + 0.0;
    const double Phi = stab_Phi(inner, zi);
    const double Psi = stab_Psi(inner, zi);
    const bool le = Psi * Psi <= Phi + kStabilitySlack * std::max(1.0, std::abs(Phi));
    if (!le) ++flag_failures;
    poly.add_row({fmt(zi), fmt(Phi), fmt(Psi), fmt(Psi * Psi), le ? "1" : "0", fmt(zo),
                  fmt(stab_A(outer, zo)), fmt(stab_B(outer, zo))});
  }
  if (stab_Phi(inner, 0.0) != 1.0) res.failures.push_back("Phi_m(0) != 1");
  if (flag_failures)
    res.failures.push_back("Psi_r^2 <= Phi_m violated at " + std::to_string(flag_failures) +
                           " points");

  const auto grid = ms_certification_grid(static_cast<std::size_t>(per_axis),
                                          cfg.num("scan.lambda_max", 1e6),
                                          cfg.num("scan.zeta_max", 1e3));
  const CertificationReport rep = certify_theorem_stability(grid, tau);
  CsvTable region{{"lambda", "zeta", "mu", "s", "m", "eta", "p_m", "q_r", "amplification", "stable"},
                  {}};
  for (const auto& pt : rep.points)
    region.add_row({fmt(pt.params.lambda), fmt(pt.params.zeta), fmt(pt.params.mu),
                    std::to_string(pt.s), std::to_string(pt.m), fmt(pt.eta), fmt(pt.p), fmt(pt.q),
                    fmt(pt.amplification), pt.stable ? "1" : "0"});
  if (rep.violations)
    res.failures.push_back("mean-square amplification >= 1 at " + std::to_string(rep.violations) +
                           " grid points");

  write_csv((dir / "polynomials.csv").string(), poly);
  write_csv((dir / "region.csv").string(), region);
  Metadata meta = base_metadata("stability-scan", cfg);
  meta["s"] = std::to_string(s);
  meta["m"] = std::to_string(m);
  meta["eps"] = fmt(eps);
  meta["grid_points"] = std::to_string(rep.points.size());
  meta["violations"] = std::to_string(rep.violations);
  meta["status"] = res.ok() ? "ok" : "failed";
  write_metadata((dir / "metadata.txt").string(), meta);
  res.outputs = {dir / "polynomials.csv", dir / "region.csv", dir / "metadata.txt"};
  return res;
}

namespace {

struct MethodRun {
  StepStats totals;
  double predicted_cost = 0.0;
  double sum_s = 0.0;
  double sum_m = 0.0;
  double sum_rho_F = 0.0;
  double sum_rho_S = 0.0;
  std::size_t steps = 0;
  Vector x;
};

MethodRun run_for_speedup(const SplitSdeProblem& problem, Method method,
                          const StageControl& control, double tau, const BrownianPath& path,
                          double cF, double cS) {
  TrajectoryIntegrator integ(problem, method, control, tau);
  MethodRun r;
  r.x.resize(problem.dimension());
  integ.run(path, r.x, [&](const StepRecord& rec, std::span<const double>) {
    const auto& st = rec.stats;
    r.totals.add_counts(st);
    r.sum_s += st.s_used;
    r.sum_m += st.m_used;
    r.sum_rho_F += st.rho_F_est;
    r.sum_rho_S += st.rho_S_est;
    ++r.steps;
    r.predicted_cost += method == Method::mskrock
                            ? mskrock_step_cost(st.s_used, st.m_used, cF, cS)
                            : skrock_step_cost(st.s_used, cF, cS);
  });
  return r;
}

} // namespace

CommandResult cmd_speedup(const RunConfig& cfg, const RunOptions& opts) {
  const std::string sweep = tolower_copy(cfg.str("speedup.sweep"));
  if (sweep != "delta" && sweep != "r") throw InputError("speedup.sweep must be delta or r");
  const std::string expected_problem = sweep == "delta" ? "refined-heat" : "reaction-network";
  if (cfg.str("problem.id") != expected_problem)
    throw InputError("speedup sweep '" + sweep + "' needs problem.id = " + expected_problem);
  const std::uint64_t seed = seed_of(cfg, opts);
  const auto paths = cfg.integer("speedup.paths", 1);
  if (paths < 1) throw InputError("speedup.paths must be >= 1");
  const StageControl control = adaptive(stage_control_from(cfg));

  std::vector<double> values;
  if (cfg.str("speedup.values", "all") == "all") {
    if (sweep == "delta") throw InputError("speedup.values is required for a delta sweep");
    const auto net = load_reaction_network_file(cfg.resolve(cfg.str("problem.file")).string());
    for (std::size_t r = 0; r <= net.reactions.size(); ++r) values.push_back(static_cast<double>(r));
  } else {
    values = cfg.num_list("speedup.values");
  }
  const fs::path dir = prepare_out(opts);
  CommandResult res;

  CsvTable out{{"value", "dimension", "rho_F", "rho_S", "mean_s", "mean_m", "mean_s_skrock",
                "mskrock_n_fF", "mskrock_n_fS", "mskrock_n_g", "skrock_n_fF", "skrock_n_fS",
                "skrock_n_g", "cost_mskrock", "predicted_cost_mskrock", "cost_skrock",
                "predicted_cost_skrock", "speedup", "theoretical_speedup", "rel_l2_difference"},
               {}};
  std::vector<double> speedups;
  for (double v : values) {
    RunConfig c = cfg;
    if (sweep == "delta") {
      c.set("problem.delta", fmt(v));
    } else {
      if (v < 0 || v != std::floor(v)) throw InputError("r sweep values must be integers >= 0");
      c.set("problem.fast", std::to_string(static_cast<long long>(v)));
    }
    const auto problem = make_problem(c);
    const double tau = c.has("speedup.tau") ? c.num("speedup.tau") : c.num("run.tau");
    const auto& w = problem.weights;
    const double total = w.fast + w.slow + w.diffusion;
    const double cF = w.fast / total, cS = w.slow / total;

    const BrownianGrid grid(seed, steps_for(problem.horizon, tau), problem.noise_dim(),
                            problem.horizon);
    MethodRun msk, sk;
    double diff2 = 0.0, norm2 = 0.0;
    for (long long p = 0; p < paths; ++p) {
      const BrownianPath path = grid.path(static_cast<std::uint64_t>(p));
      MethodRun a = run_for_speedup(problem, Method::mskrock, control, tau, path, cF, cS);
      MethodRun b = run_for_speedup(problem, Method::skrock, control, tau, path, cF, cS);
      for (std::size_t i = 0; i < a.x.size(); ++i) {
        diff2 += (a.x[i] - b.x[i]) * (a.x[i] - b.x[i]);
        norm2 += b.x[i] * b.x[i];
      }
      for (auto [dst, src] : {std::pair{&msk, &a}, std::pair{&sk, &b}}) {
        dst->totals.add_counts(src->totals);
        dst->predicted_cost += src->predicted_cost;
        dst->sum_s += src->sum_s;
        dst->sum_m += src->sum_m;
        dst->sum_rho_F += src->sum_rho_F;
        dst->sum_rho_S += src->sum_rho_S;
        dst->steps += src->steps;
      }
    }
    auto measured = [&](const StepStats& t) {
      return (static_cast<double>(t.n_fF) * w.fast + static_cast<double>(t.n_fS) * w.slow +
              static_cast<double>(t.n_g) * w.diffusion) /
             total;
    };
    const double cost_m = measured(msk.totals);
    const double cost_s = measured(sk.totals);
    const double steps_m = static_cast<double>(msk.steps);
    const double rho_F = msk.sum_rho_F / steps_m;
    const double rho_S = msk.sum_rho_S / steps_m;
    double theory = std::nan("");
    if (rho_S > 0.0) theory = theoretical_speedup(tau * rho_F, tau * rho_S, cF, cS);
    const double speedup = cost_s / cost_m;
    speedups.push_back(speedup);
    out.add_row({fmt(v), std::to_string(problem.dimension()), fmt(rho_F), fmt(rho_S),
                 fmt(msk.sum_s / steps_m), fmt(msk.sum_m / steps_m),
                 fmt(sk.sum_s / static_cast<double>(sk.steps)), std::to_string(msk.totals.n_fF),
                 std::to_string(msk.totals.n_fS), std::to_string(msk.totals.n_g),
                 std::to_string(sk.totals.n_fF), std::to_string(sk.totals.n_fS),
                 std::to_string(sk.totals.n_g), fmt(cost_m), fmt(msk.predicted_cost), fmt(cost_s),
                 fmt(sk.predicted_cost), fmt(speedup), fmt(theory),
                 fmt(norm2 > 0.0 ? std::sqrt(diff2 / norm2) : std::sqrt(diff2))});

    const std::string tag = sweep + "=" + fmt(v);
    if (!close_rel(cost_m, msk.predicted_cost, 1e-10))
      res.failures.push_back("cost " + tag + ": mSK-ROCK counted " + fmt(cost_m) +
                             " != predicted " + fmt(msk.predicted_cost));
    if (!close_rel(cost_s, sk.predicted_cost, 1e-10))
      res.failures.push_back("cost " + tag + ": SK-ROCK counted " + fmt(cost_s) +
                             " != predicted " + fmt(sk.predicted_cost));
    if (sweep == "r" && v == 0.0 && !close_rel(cost_m, cost_s, 1e-10))
      res.failures.push_back("cost r=0: mSK-ROCK " + fmt(cost_m) + " != SK-ROCK " + fmt(cost_s));
  }
  if (sweep == "delta") {
    const auto it = std::min_element(values.begin(), values.end());
    const double s_min = speedups[static_cast<std::size_t>(it - values.begin())];
    const double need = cfg.num("checks.min_speedup", 1.0);
    if (s_min < need)
      res.failures.push_back("speedup at smallest delta " + fmt(s_min) + " < " + fmt(need));
  }

  write_csv((dir / "cost.csv").string(), out);
  Metadata meta = base_metadata("speedup", cfg);
  meta["seed"] = std::to_string(seed);
  meta["sweep"] = sweep;
  meta["paths"] = std::to_string(paths);
  meta["status"] = res.ok() ? "ok" : "failed";
  write_metadata((dir / "metadata.txt").string(), meta);
  res.outputs = {dir / "cost.csv", dir / "metadata.txt"};
  return res;
}

CommandResult cmd_certify(const RunConfig& cfg, const RunOptions& opts) {
  const auto per_axis = cfg.integer("certify.per_axis", 20);
  const double tau = cfg.num("certify.tau", 1.0);
  const auto phi_points = cfg.integer("certify.phi_points", 10000);
  const auto psi_points = cfg.integer("certify.psi_points", 5000);
  const auto force_points = cfg.integer("certify.force_points", 20001);
  const auto r_max = cfg.integer("certify.r_max", 8);
  const auto s_max = cfg.integer("certify.s_max", 200);
  const std::vector<double> eps_list =
      cfg.has("certify.eps") ? cfg.num_list("certify.eps") : std::vector<double>{0.0, 0.05, 1.0};
  if (per_axis < 2 || phi_points < 1 || psi_points < 1 || force_points < 2 || r_max < 1 ||
      s_max < 1)
    throw InputError("certify: sample counts must be positive");
  const fs::path dir = prepare_out(opts);
  CommandResult res;

  CsvTable out{{"check", "points", "violations", "worst", "expected", "passed"}, {}};
  auto add = [&](const std::string& name, std::size_t points, std::size_t violations,
                 double worst, bool expect_violation) {
    const bool passed = expect_violation ? violations > 0 : violations == 0;
    out.add_row({name, std::to_string(points), std::to_string(violations), fmt(worst),
                 expect_violation ? "some" : "none", passed ? "1" : "0"});
    if (!passed)
      res.failures.push_back(name + ": " + std::to_string(violations) + " violations (expected " +
                             (expect_violation ? "some" : "none") + ")");
  };
  auto add_check = [&](const InequalityCheck& c, bool expect_violation = false) {
    add(c.name, c.points, c.violations, c.worst, expect_violation);
  };

  add_check(check_phi_half_square(static_cast<std::size_t>(phi_points)));
  for (double eps : eps_list)
    for (int r = 1; r <= r_max; ++r)
      add_check(check_psi_phi(r, eps, static_cast<std::size_t>(psi_points)));
  add_check(check_averaged_force_bound(1.9, -1.0, static_cast<std::size_t>(force_points)), true);
  add_check(check_averaged_force_bound(2.0, -1.0, static_cast<std::size_t>(force_points)));

  const auto grid = ms_certification_grid(static_cast<std::size_t>(per_axis));
  const auto rep = certify_theorem_stability(grid, tau);
  double worst = 0.0;
  for (const auto& p : rep.points) worst = std::max(worst, p.amplification - 1.0);
  add("mean-square amplification < 1 on S^mMS grid", rep.points.size(), rep.violations, worst,
      false);

  for (double eps : eps_list) {
    std::size_t bad = 0;
    double worst_dev = 0.0;
    for (int s = 1; s <= s_max; ++s) {
      const auto chk = stage_abscissae_check(OuterCoefficients::make(s, eps));
      worst_dev = std::max({worst_dev, std::abs(chk.consistency_sum - 1.0),
                            std::abs(chk.noise_weight - 1.0)});
      if (!chk.ok) ++bad;
    }
    add("stage weights consistent (eps=" + fmt(eps) + ")", static_cast<std::size_t>(s_max), bad,
        worst_dev, false);
  }

  write_csv((dir / "certify.csv").string(), out);
  Metadata meta = base_metadata("certify", cfg);
  meta["checks"] = std::to_string(out.rows.size());
  meta["failed"] = std::to_string(res.failures.size());
  meta["status"] = res.ok() ? "ok" : "failed";
  write_metadata((dir / "metadata.txt").string(), meta);
  res.outputs = {dir / "certify.csv", dir / "metadata.txt"};
  return res;
}

} // namespace mskrock::cli
