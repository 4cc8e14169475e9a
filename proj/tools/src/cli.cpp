#include "mskrock_cli/commands.hpp"

#include "mskrock/convergence.hpp"
#include "mskrock/types.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <ostream>

namespace mskrock::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multirate stabilized integrators for stiff SDEs: experiment driver"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out_dir = ".";
  std::vector<std::string> overrides;

  using Command = std::function<CommandResult(const RunConfig&, const RunOptions&)>;
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"integrate", "Integrate one trajectory; writes snapshot.csv and steps.csv", cmd_integrate},
      {"converge", "Strong/weak errors over step sizes; writes errors.csv", cmd_converge},
      {"stability-scan", "Stability polynomials and mean-square region; writes polynomials.csv "
                         "and region.csv", cmd_stability_scan},
      {"speedup", "Evaluation-cost comparison over a delta or r sweep; writes cost.csv",
       cmd_speedup},
      {"certify", "Inequality and stability certification suite; writes certify.csv",
       cmd_certify},
  };

  std::map<std::string, CLI::Option*> seed_opts, threads_opts;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "INI configuration file");
    seed_opts[name] = sub->add_option("--seed", seed, "Random seed (overrides run.seed)");
    threads_opts[name] =
        sub->add_option("--threads", threads, "Worker threads (overrides run.threads)")
            ->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--set", overrides, "Override a config key: section.key=value");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.get_subcommand(name);
    if (!sub->parsed()) continue;
    try {
      RunConfig cfg = config_path.empty() ? RunConfig::from_string("version = 1\n")
                                          : RunConfig::from_file(config_path);
      for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) throw InputError("--set expects section.key=value: " + ov);
        cfg.set(ov.substr(0, eq), ov.substr(eq + 1));
      }
      cfg.validate();
      RunOptions opts;
      opts.out_dir = out_dir;
      if (seed_opts[name]->count()) opts.seed = seed;
      if (threads_opts[name]->count()) opts.threads = threads;

      const CommandResult res = fn(cfg, opts);
      for (const auto& p : res.outputs) out << "wrote " << p.string() << '\n';
      const auto failures_file = opts.out_dir / "failures.txt";
      if (res.ok()) {
        std::error_code ec;
        std::filesystem::remove(failures_file, ec);
        return 0;
      }
      std::ofstream f(failures_file, std::ios::binary);
      for (const auto& msg : res.failures) {
        err << "FAIL " << msg << '\n';
        f << msg << '\n';
      }
      return 1;
    } catch (const InputError& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 2;
}

} // namespace mskrock::cli
