#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "commands.hpp"
#include "mhcount/errors.hpp"

namespace {

int resolve_workers(int flag_value, const mhtool::ExperimentConfig& cfg) {
  int w = flag_value;
  if (w == 0 && cfg.workers) w = *cfg.workers;
  if (w == 0) w = static_cast<int>(std::thread::hardware_concurrency());
  return w > 0 ? w : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact character sums and point counts on generalized Markoff-Hurwitz "
               "and Dwork hypersurfaces"};
  app.require_subcommand(1);

  std::string config_path;
  int workers = 0;
  int64_t budget = 0;
  std::string out_path;
  bool timing = false;
  app.add_option("--config", config_path, "JSON experiment configuration");
  app.add_option("--workers", workers, "worker threads (0 = machine parallelism)");
  app.add_option("--budget", budget, "innermost-evaluation cap per call");
  app.add_option("--out", out_path, "output CSV path (default: stdout)");
  app.add_flag("--timing", timing, "emit real elapsed times instead of 0");

  CLI::App* count = app.add_subcommand("count", "exact point counts over boxes");
  CLI::App* verify = app.add_subcommand("verify", "identity and invariant suites");
  CLI::App* scan = app.add_subcommand("scan-density", "counts across an h-grid with slopes");
  CLI::App* charsum = app.add_subcommand("charsum", "character and exponential sum reports");
  for (CLI::App* sub : {count, verify, scan, charsum}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    mhtool::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = mhtool::parse_config_file(config_path);

    mhtool::GlobalOptions opt;
    opt.workers = resolve_workers(workers, cfg);
    opt.budget = budget > 0 ? budget : cfg.budget.value_or(mhcount::kDefaultBudget);
    if (!out_path.empty())
      opt.out = out_path;
    else
      opt.out = cfg.out;
    opt.timing = timing || cfg.timing;

    if (app.got_subcommand(count)) return mhtool::cmd_count(cfg, opt);
    if (app.got_subcommand(verify)) return mhtool::cmd_verify(cfg, opt);
    if (app.got_subcommand(scan)) return mhtool::cmd_scan_density(cfg, opt);
    return mhtool::cmd_charsum(cfg, opt);
  } catch (const mhtool::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mhcount::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const mhcount::ResidualTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const mhcount::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
