#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "varpns/solver.hpp"
#include "varpns/study.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Convergence studies for the variable-exponent power-law "
               "(Navier-)Stokes solver"};
  app.require_subcommand(1);

  CLI::App* study = app.add_subcommand("study", "Run one convergence study");
  std::string config_path;
  std::string element, model, out_dir;
  double p_minus = 0.0, alpha = 0.0;
  int levels = -1;
  bool confirm_heavy = false;
  study->add_option("--config", config_path, "Flat key=value config file")
      ->required();
  study->add_option("--element", element, "mini | taylor-hood");
  study->add_option("--model", model, "stokes | navier-stokes");
  CLI::Option* opt_p = study->add_option("--p-minus", p_minus, "p- (> 2)");
  CLI::Option* opt_a = study->add_option("--alpha", alpha, "alpha in (0, 1]");
  CLI::Option* opt_l = study->add_option("--levels", levels, "finest level");
  study->add_option("--out", out_dir, "output directory");
  study->add_flag("--confirm-heavy", confirm_heavy,
                  "allow levels above 5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    varpns::StudyConfig config = varpns::parse_config_file(config_path);
    // Flags win over file values.
    if (!element.empty()) varpns::apply_config_key(config, "element", element);
    if (!model.empty()) varpns::apply_config_key(config, "model", model);
    if (opt_p->count()) config.p_minus = p_minus;
    if (opt_a->count()) config.alpha = alpha;
    if (opt_l->count()) config.max_level = levels;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (confirm_heavy) config.confirm_heavy = true;

    varpns::run_study(config, std::cout);
    std::cout << "results written to " << config.out_dir << "/results.csv"
              << std::endl;
    return 0;
  } catch (const varpns::ConfigError& err) {
    std::cerr << "config error: " << err.what() << std::endl;
    return 2;
  } catch (const varpns::SolverError& err) {
    std::cerr << "solver failure: " << err.what() << std::endl;
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return 1;
  }
}
