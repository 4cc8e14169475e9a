#include "mskrock/convergence.hpp"

#include "mskrock/csv.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace mskrock {

const char* reference_name(ReferenceKind k) {
  switch (k) {
  case ReferenceKind::exact: return "exact";
  case ReferenceKind::fine_skrock: return "fine-skrock";
  case ReferenceKind::same_tau: return "same-tau";
  }
  return "?";
}

ReferenceKind parse_reference(const std::string& name) {
  if (name == "exact") return ReferenceKind::exact;
  if (name == "fine-skrock") return ReferenceKind::fine_skrock;
  if (name == "same-tau") return ReferenceKind::same_tau;
  throw InputError("unknown reference '" + name + "' (expected exact, fine-skrock or same-tau)");
}

PathDivergenceError::PathDivergenceError(std::size_t path, double tau, const std::string& what)
    : std::runtime_error("path " + std::to_string(path) + " diverged at tau=" +
                         format_double(tau) + ": " + what),
      path_(path), tau_(tau) {}

void ErrorTable::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i > 0 && !(r.tau < rows[i - 1].tau))
      throw InputError("error table: tau must strictly decrease");
    if (!(r.strong_error >= 0.0) || !(r.weak_error >= 0.0) || !(r.strong_mc_stderr >= 0.0) ||
        !(r.weak_mc_stderr >= 0.0))
      throw InputError("error table: errors must be non-negative");
  }
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& v) {
  MeanSd r;
  const double n = static_cast<double>(v.size());
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.sd = std::sqrt(ss / (n - 1.0));
  }
  return r;
}

struct CounterSums {
  std::int64_t steps = 0;
  std::int64_t s = 0;
  std::int64_t m = 0;
  std::int64_t fF = 0;
  std::int64_t fS = 0;
  std::int64_t g = 0;
};

} // namespace

ErrorTable run_convergence(const SplitSdeProblem& problem, const ConvergenceOptions& opts) {
  problem.validate();
  if (opts.n_paths == 0) throw InputError("convergence: number of paths must be >= 1");
  if (opts.taus.empty()) throw InputError("convergence: no step sizes");
  if (opts.threads == 0) throw InputError("convergence: threads must be >= 1");
  if (!problem.weak_functional) throw InputError("convergence: problem has no weak functional");
  for (std::size_t i = 1; i < opts.taus.size(); ++i)
    if (!(opts.taus[i] < opts.taus[i - 1]))
      throw InputError("convergence: step sizes must strictly decrease");

  const auto& ref = opts.reference;
  if (ref.kind == ReferenceKind::exact && !problem.exact_solution)
    throw InputError("convergence: exact reference requested but the problem has none");
  if (ref.kind == ReferenceKind::fine_skrock && ref.refinement < 1)
    throw InputError("convergence: fine reference must be strictly finer than every tau");

  const double T = problem.horizon;
  std::vector<std::size_t> steps;
  for (double tau : opts.taus) steps.push_back(steps_for(T, tau));
  std::size_t finest = steps.back();
  if (ref.kind == ReferenceKind::fine_skrock) finest <<= ref.refinement;
  const BrownianGrid grid(opts.seed, finest, problem.noise_dim(), T);
  for (std::size_t n : steps) grid.check_level(n);

  const std::size_t n_tau = opts.taus.size();
  const std::size_t n_paths = opts.n_paths;
  std::vector<std::vector<double>> sq_err(n_tau, std::vector<double>(n_paths));
  std::vector<std::vector<double>> weak_diff(n_tau, std::vector<double>(n_paths));
  std::vector<CounterSums> counters(n_tau);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::size_t failed_path = std::numeric_limits<std::size_t>::max();
  double failed_tau = 0.0;
  std::string failed_what;
  std::exception_ptr other_error;

  auto worker = [&] {
    std::vector<TrajectoryIntegrator> num;
    std::vector<TrajectoryIntegrator> same;
    std::vector<CounterSums> local(n_tau);
    try {
      for (double tau : opts.taus) {
        num.emplace_back(problem, opts.method, opts.control, tau);
        if (ref.kind == ReferenceKind::same_tau)
          same.emplace_back(problem, ref.method, ref.control, tau);
      }
      std::optional<TrajectoryIntegrator> fine;
      if (ref.kind == ReferenceKind::fine_skrock)
        fine.emplace(problem, Method::skrock, ref.control, T / static_cast<double>(finest));

      BrownianPath path;
      const std::size_t n = problem.dimension();
      Vector x_ref(n), x_num(n);
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t p = next.fetch_add(1);
        if (p >= n_paths) break;
        grid.fill(p, path);
        std::size_t i = 0;
        try {
          if (ref.kind == ReferenceKind::exact) {
            x_ref = problem.exact_solution(T, path.terminal());
          } else if (fine) {
            fine->run(path, x_ref);
          }
          for (i = 0; i < n_tau; ++i) {
            const PathSummary sum = num[i].run(path, x_num);
            if (ref.kind == ReferenceKind::same_tau) same[i].run(path, x_ref);
            if (!all_finite(x_num) || !all_finite(x_ref))
              throw DivergenceError(method_name(opts.method), 0);
            sq_err[i][p] = sq_dist(x_ref, x_num);
            weak_diff[i][p] = problem.weak_functional(x_ref) - problem.weak_functional(x_num);
            auto& c = local[i];
            c.steps += static_cast<std::int64_t>(sum.steps);
            c.s += static_cast<std::int64_t>(sum.sum_s);
            c.m += static_cast<std::int64_t>(sum.sum_m);
            c.fF += sum.totals.n_fF;
            c.fS += sum.totals.n_fS;
            c.g += sum.totals.n_g;
          }
        } catch (const DivergenceError& e) {
          std::lock_guard lock(mu);
          if (p < failed_path) {
            failed_path = p;
            failed_tau = i < n_tau ? opts.taus[i] : 0.0;
            failed_what = e.what();
          }
          stop = true;
        } catch (const EstimationError& e) {
          std::lock_guard lock(mu);
          if (p < failed_path) {
            failed_path = p;
            failed_tau = i < n_tau ? opts.taus[i] : 0.0;
            failed_what = e.what();
          }
          stop = true;
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!other_error) other_error = std::current_exception();
      stop = true;
    }
    std::lock_guard lock(mu);
    for (std::size_t i = 0; i < n_tau; ++i) {
      counters[i].steps += local[i].steps;
      counters[i].s += local[i].s;
      counters[i].m += local[i].m;
      counters[i].fF += local[i].fF;
      counters[i].fS += local[i].fS;
      counters[i].g += local[i].g;
    }
  };

  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(opts.threads, n_paths));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }
  if (other_error) std::rethrow_exception(other_error);
  if (failed_path != std::numeric_limits<std::size_t>::max())
    throw PathDivergenceError(failed_path, failed_tau, failed_what);

  ErrorTable table;
  const double np = static_cast<double>(n_paths);
  for (std::size_t i = 0; i < n_tau; ++i) {
    ErrorRow row;
    row.tau = opts.taus[i];
    row.n_samples = n_paths;
    const MeanSd se = mean_sd(sq_err[i]);
    row.strong_error = std::sqrt(se.mean);
    row.strong_mc_stderr =
        row.strong_error > 0.0 ? se.sd / std::sqrt(np) / (2.0 * row.strong_error) : 0.0;
    const MeanSd wd = mean_sd(weak_diff[i]);
    row.weak_error = std::abs(wd.mean);
    row.weak_mc_stderr = wd.sd / std::sqrt(np);
    const auto& c = counters[i];
    const double st = static_cast<double>(std::max<std::int64_t>(c.steps, 1));
    row.mean_s = static_cast<double>(c.s) / st;
    row.mean_m = static_cast<double>(c.m) / st;
    row.mean_n_fF = static_cast<double>(c.fF) / st;
    row.mean_n_fS = static_cast<double>(c.fS) / st;
    row.mean_n_g = static_cast<double>(c.g) / st;
    table.rows.push_back(row);
  }
  return table;
}

SlopeFit fit_slope(std::span<const double> taus, std::span<const double> errors) {
  if (taus.size() != errors.size()) throw InputError("fit_slope: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0) || !(errors[i] > 0.0)) continue;
    lx.push_back(std::log2(taus[i]));
    ly.push_back(std::log2(errors[i]));
  }
  if (lx.size() < 3) throw InputError("fit_slope: needs at least 3 points with positive error");
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InputError("fit_slope: step sizes must not all coincide");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

SlopeFit fit_slope(const ErrorTable& table, ErrorKind which) {
  std::vector<double> taus, errs;
  for (const auto& r : table.rows) {
    taus.push_back(r.tau);
    errs.push_back(which == ErrorKind::strong ? r.strong_error : r.weak_error);
  }
  return fit_slope(taus, errs);
}

namespace {

const std::vector<std::string> kErrorColumns = {
    "tau",        "strong_error", "strong_mc_stderr", "weak_error",
    "weak_mc_stderr", "n_samples", "mean_s",          "mean_m",
    "mean_n_fF",  "mean_n_fS",    "mean_n_g"};

} // namespace

void write_error_table(std::ostream& out, const ErrorTable& table) {
  CsvTable t;
  t.header = kErrorColumns;
  for (const auto& r : table.rows)
    t.add_row({format_double(r.tau), format_double(r.strong_error),
               format_double(r.strong_mc_stderr), format_double(r.weak_error),
               format_double(r.weak_mc_stderr), std::to_string(r.n_samples),
               format_double(r.mean_s), format_double(r.mean_m), format_double(r.mean_n_fF),
               format_double(r.mean_n_fS), format_double(r.mean_n_g)});
  write_csv(out, t);
}

void write_error_table(const std::string& path, const ErrorTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_error_table(out, table);
}

ErrorTable read_error_table(std::istream& in) {
  const CsvTable t = read_csv(in);
  ErrorTable table;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    ErrorRow r;
    r.tau = t.number(i, "tau");
    r.strong_error = t.number(i, "strong_error");
    r.strong_mc_stderr = t.number(i, "strong_mc_stderr");
    r.weak_error = t.number(i, "weak_error");
    r.weak_mc_stderr = t.number(i, "weak_mc_stderr");
    r.n_samples = static_cast<std::size_t>(t.number(i, "n_samples"));
    r.mean_s = t.number(i, "mean_s");
    r.mean_m = t.number(i, "mean_m");
    r.mean_n_fF = t.number(i, "mean_n_fF");
    r.mean_n_fS = t.number(i, "mean_n_fS");
    r.mean_n_g = t.number(i, "mean_n_g");
    table.rows.push_back(r);
  }
  table.validate();
  return table;
}

ErrorTable read_error_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_error_table(in);
}

void write_metadata(const std::string& path, const Metadata& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  for (const auto& [k, v] : meta) {
    if (k.find('=') != std::string::npos || k.find('\n') != std::string::npos ||
        v.find('\n') != std::string::npos)
      throw InputError("metadata: key or value contains '=' or a newline: " + k);
    out << k << '=' << v << '\n';
  }
}

Metadata read_metadata(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  Metadata meta;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("metadata: line without '=': " + line);
    meta[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return meta;
}

} // namespace mskrock
