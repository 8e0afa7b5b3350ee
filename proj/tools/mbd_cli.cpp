#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mbd/cli_ops.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  double h = 0.0;
  bool h_set = false;
  int order = 0;
  bool order_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->set_help_flag("--help", "print help");  // frees -h / --h
  cmd->add_option("--config", opts.config_path, "scenario config (JSON)")
      ->required();
  cmd->add_option("--out", opts.out_path, "output file path")->required();
  cmd->add_option("--h", opts.h, "finite-difference step override")
      ->each([&opts](const std::string&) { opts.h_set = true; });
  cmd->add_option("--order", opts.order, "finite-difference order (2 or 4)")
      ->each([&opts](const std::string&) { opts.order_set = true; });
}

int dispatch(const std::string& name, const CommonOptions& opts) {
  std::ifstream in(opts.config_path);
  if (!in) {
    std::cerr << "config error: cannot open '" << opts.config_path << "'\n";
    return mbd::kExitConfigError;
  }
  mbd::Json config;
  try {
    in >> config;
  } catch (const mbd::Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return mbd::kExitConfigError;
  }
  return mbd::run_command(
      name, config, opts.out_path,
      opts.h_set ? std::optional<double>(opts.h) : std::nullopt,
      opts.order_set ? std::optional<int>(opts.order) : std::nullopt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact Maxwell-Bloch solutions by binary dressing, with "
      "finite-difference verification"};
  app.require_subcommand(1);

  CommonOptions generate_opts, verify_opts, reconcile_opts, perturb_opts;
  add_common(app.add_subcommand("generate", "write a field table (CSV)"),
             generate_opts);
  add_common(app.add_subcommand("verify",
                                "run residual and conservation checks"),
             verify_opts);
  add_common(app.add_subcommand(
                 "reconcile", "compare a closed form against the engine"),
             reconcile_opts);
  add_common(app.add_subcommand(
                 "perturb", "linearized solutions and delta convergence"),
             perturb_opts);

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "generate") return dispatch(name, generate_opts);
  if (name == "verify") return dispatch(name, verify_opts);
  if (name == "reconcile") return dispatch(name, reconcile_opts);
  return dispatch(name, perturb_opts);
}
