#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "bergman/cli.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions = {
    {"levi", "Levi-form pseudoconvexity check at seeded boundary points"},
    {"lemma1a", "circle integral of the kernel against (rho(xi) + r)^(-t-1)"},
    {"lemma1b", "weighted kernel integral against rho(xi)^(sigma-t-1)"},
    {"lemma2", "F(r) = r^delta int_0^r0 R^(t-delta) / (r + R)^(t+1) dR"},
    {"lemma3", "Forelli-Rudin type inequality for 0 < p < 1"},
    {"embedding", "mixed-norm and Bergman-space embeddings (prop1, cor1, prop2)"},
    {"theorem1", "boundedness of T_alpha on the mixed-norm space"},
    {"theorem2", "boundedness of V_beta from L to A on the bidisk"},
    {"reproduce", "reproducing identity residuals on the quadrature grid"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace bergman;
  CLI::App app{"Numerical laboratory for weighted Bergman projections and kernel estimates"};
  app.require_subcommand(1);

  std::map<std::string, std::string> raw;
  std::map<std::string, bool> flags;
  std::map<std::string, std::string> config_path;
  std::map<std::string, CLI::Option*> given;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--config", config_path[name], "JSON config file; flags override its values");
    for (const auto& f : config_fields()) {
      if (!field_applies(f, name)) continue;
      const std::string key = name + "/" + f.name;
      if (std::holds_alternative<bool ExperimentConfig::*>(f.ref))
        given[key] = sub->add_flag(std::string("--") + f.name, flags[key], f.help);
      else
        given[key] = sub->add_option(std::string("--") + f.name, raw[key], f.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kUsageStatus;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  ExperimentConfig cfg;
  try {
    if (!config_path[command].empty()) {
      cfg = load_config(config_path[command]);
      if (cfg.command != command)
        throw LabError(ErrorCode::InvalidArgument,
                       "config file is for '" + cfg.command + "', not '" + command + "'");
    }
    cfg.command = command;
    for (const auto& f : config_fields()) {
      const std::string key = command + "/" + f.name;
      const auto it = given.find(key);
      if (it == given.end() || it->second->count() == 0) continue;
      if (std::holds_alternative<bool ExperimentConfig::*>(f.ref))
        cfg.*std::get<bool ExperimentConfig::*>(f.ref) = flags[key];
      else
        set_field_from_text(cfg, f, raw[key]);
    }
  } catch (const LabError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageStatus;
  }

  const auto result = run(cfg);
  if (!result.error.empty()) std::fprintf(stderr, "error: %s\n", result.error.c_str());
  if (result.report) {
    const auto& r = *result.report;
    std::fprintf(stderr, "%s: verdict %s, max_ratio %.6g, tail_slope %.4g, grid_stability %.3g, %.0f ms\n",
                 r.experiment.c_str(), to_string(r.verdict), r.max_ratio, r.tail_slope, r.grid_stability,
                 r.walltime_ms);
  }
  return result.status;
}
