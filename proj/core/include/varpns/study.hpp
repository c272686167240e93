#pragma once

#include <iosfwd>
#include <string>

#include "varpns/analysis.hpp"

namespace varpns {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full description of one convergence study.  Level n uses the n-times
/// refined mesh and K_n = 2^{n+2} implicit Euler steps.
struct StudyConfig {
  ElementPair element = ElementPair::TaylorHood;
  ModelVariant model = ModelVariant::NavierStokes;
  double p_minus = 2.5;
  double alpha = 1.0;
  int max_level = 4;
  double T = 0.1;
  double mu0 = 0.5;
  double delta = 1e-5;
  int quadrature_degree = 8;
  std::string out_dir = "out";
  bool confirm_heavy = false;  // required above level 5
  bool polynomial_debug = false;  // p == 2, polynomial data exactness check
  int threads = 0;  // 0 = hardware concurrency; VARPNS_THREADS caps
};

/// Throws ConfigError when invariants are violated (p- > 2 unless debug,
/// 0 < alpha <= 1, level guard).
void validate(const StudyConfig& config);

/// Flat key=value file; '#' starts a comment.  Unknown keys throw
/// ConfigError listing them.
StudyConfig parse_config_file(const std::string& path);

/// Apply one key=value pair (shared by file parser and flag override).
void apply_config_key(StudyConfig& config, const std::string& key,
                      const std::string& value);

/// Stable key=value echo of the effective configuration.
std::string config_echo(const StudyConfig& config);

/// Requested thread count clamped by the VARPNS_THREADS environment variable.
int effective_threads(int requested);

struct LevelRun {
  ErrorQuadruple errors;
  SolveTrace trace;
  std::vector<StepState> states;  // k = 0..K
  int newton_iterations_total = 0;
};

/// Solve one level on the given mesh (already refined `level` times) and
/// compute the error quadruple.
LevelRun solve_level(const StudyConfig& config, const Triangulation& mesh,
                     int level);

/// One CSV row per level; errors with 6 significant digits, EOCs with 3
/// decimals.  The leading timestamp comment is outside the stable region.
void write_csv(const ErrorReport& report, std::ostream& out,
               bool with_timestamp);

/// Run levels 0..max_level, streaming rows into <out_dir>/results.csv and
/// progress into `log`.  A solver failure leaves the partial CSV in place
/// and rethrows SolverError.
ErrorReport run_study(const StudyConfig& config, std::ostream& log);

}  // namespace varpns
