#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace radarint::cli;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> trials;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--seed", f.seed, "master seed (scenario and Monte Carlo)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores");
}

RunConfig resolve(const CommonFlags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (f.seed) {
    cfg.seed = *f.seed;
    cfg.scenario.highway.seed = *f.seed;
    cfg.validation.seed = *f.seed;
  }
  if (f.out) cfg.out_dir = *f.out;
  if (f.threads) cfg.threads = *f.threads;
  if (f.trials) cfg.validation.trials = *f.trials;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FMCW radar interference simulator and failure-rate models"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto* gen = app.add_subcommand("generate", "write a synthetic highway scenario CSV");
  auto* itf = app.add_subcommand("interferers", "interferer distributions and count curves");
  auto* eval = app.add_subcommand("evaluate", "failure probability and T_fail per scheme");
  auto* sweep = app.add_subcommand("sweep", "evaluate across one parameter axis");
  auto* val = app.add_subcommand("validate", "closed forms against Monte Carlo and enumeration");
  for (auto* c : {gen, itf, eval, sweep, val}) add_common(c, flags);
  val->add_option("--trials", flags.trials, "Monte Carlo trials per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationFailure;
  }

  return run_guarded(
      [&] {
        const RunConfig cfg = resolve(flags);
        if (*gen) return cmd_generate(cfg, std::cerr);
        if (*itf) return cmd_interferers(cfg, std::cerr);
        if (*eval) return cmd_evaluate(cfg, std::cerr);
        if (*sweep) return cmd_sweep(cfg, std::cerr);
        return cmd_validate(cfg, std::cout);
      },
      std::cerr);
}
