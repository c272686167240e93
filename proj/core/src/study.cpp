#include "varpns/study.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace varpns {

void validate(const StudyConfig& config) {
  if (!config.polynomial_debug && !(config.p_minus > 2.0))
    throw ConfigError("p_minus must be > 2");
  if (!(config.alpha > 0.0 && config.alpha <= 1.0))
    throw ConfigError("alpha must be in (0, 1]");
  if (config.max_level < 0 || config.max_level > 6)
    throw ConfigError("levels must be in 0..6");
  if (config.max_level > 5 && !config.confirm_heavy)
    throw ConfigError("levels above 5 require confirm_heavy=true");
  if (!(config.T > 0.0)) throw ConfigError("T must be positive");
  if (!(config.mu0 > 0.0)) throw ConfigError("mu0 must be positive");
  if (config.delta < 0.0) throw ConfigError("delta must be nonnegative");
  if (config.quadrature_degree < 1 || config.quadrature_degree > 10)
    throw ConfigError("quadrature degree must be in 1..10");
}

namespace {

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + key + "': expected boolean, got '" +
                    value + "'");
}

double parse_double(const std::string& value, const std::string& key) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size())
    throw ConfigError("config key '" + key + "': expected number, got '" +
                      value + "'");
  return x;
}

int parse_int(const std::string& value, const std::string& key) {
  std::size_t pos = 0;
  int x = 0;
  try {
    x = std::stoi(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size())
    throw ConfigError("config key '" + key + "': expected integer, got '" +
                      value + "'");
  return x;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_key(StudyConfig& config, const std::string& key,
                      const std::string& value) {
  if (key == "element") {
    if (value == "mini")
      config.element = ElementPair::MINI;
    else if (value == "taylor-hood" || value == "taylor_hood")
      config.element = ElementPair::TaylorHood;
    else
      throw ConfigError("config key 'element': expected mini or taylor-hood");
  } else if (key == "model") {
    if (value == "stokes")
      config.model = ModelVariant::Stokes;
    else if (value == "navier-stokes" || value == "navier_stokes")
      config.model = ModelVariant::NavierStokes;
    else
      throw ConfigError("config key 'model': expected stokes or navier-stokes");
  } else if (key == "p_minus") {
    config.p_minus = parse_double(value, key);
  } else if (key == "alpha") {
    config.alpha = parse_double(value, key);
  } else if (key == "levels") {
    config.max_level = parse_int(value, key);
  } else if (key == "T") {
    config.T = parse_double(value, key);
  } else if (key == "mu0") {
    config.mu0 = parse_double(value, key);
  } else if (key == "delta") {
    config.delta = parse_double(value, key);
  } else if (key == "degree") {
    config.quadrature_degree = parse_int(value, key);
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "confirm_heavy") {
    config.confirm_heavy = parse_bool(value, key);
  } else if (key == "polynomial_debug") {
    config.polynomial_debug = parse_bool(value, key);
  } else if (key == "threads") {
    config.threads = parse_int(value, key);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

StudyConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  StudyConfig config;
  std::string line;
  std::vector<std::string> unknown;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_config_key(config, key, value);
    } catch (const ConfigError& err) {
      if (std::string(err.what()).rfind("unknown config key", 0) == 0)
        unknown.push_back(key);
      else
        throw;
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }
  return config;
}

std::string config_echo(const StudyConfig& config) {
  std::ostringstream out;
  out << "element = "
      << (config.element == ElementPair::MINI ? "mini" : "taylor-hood") << "\n"
      << "model = "
      << (config.model == ModelVariant::Stokes ? "stokes" : "navier-stokes")
      << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", config.p_minus);
  out << "p_minus = " << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", config.alpha);
  out << "alpha = " << buf << "\n"
      << "levels = " << config.max_level << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", config.T);
  out << "T = " << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", config.mu0);
  out << "mu0 = " << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", config.delta);
  out << "delta = " << buf << "\n"
      << "degree = " << config.quadrature_degree << "\n"
      << "out = " << config.out_dir << "\n"
      << "confirm_heavy = " << (config.confirm_heavy ? "true" : "false") << "\n"
      << "polynomial_debug = " << (config.polynomial_debug ? "true" : "false")
      << "\n"
      << "threads = " << config.threads << "\n";
  return out.str();
}

int effective_threads(int requested) {
  int threads = requested > 0
                    ? requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("VARPNS_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  return threads;
}

namespace {

Eigen::VectorXd boundary_vector(
    const DofMap& dofmap,
    const std::function<Eigen::Vector2d(const Vec2&)>& value) {
  Eigen::VectorXd bc = Eigen::VectorXd::Zero(dofmap.n_total);
  for (int sdof : dofmap.boundary_velocity_dofs) {
    const Eigen::Vector2d g = value(dofmap.velocity_dof_node[sdof]);
    bc(dofmap.global_velocity(sdof, 0)) = g(0);
    bc(dofmap.global_velocity(sdof, 1)) = g(1);
  }
  return bc;
}

ExactSolution polynomial_solution(const StressModel& model) {
  ExactSolution exact;
  exact.velocity = [](double t, const Vec2& x) {
    return PolynomialCase::velocity(t, x);
  };
  exact.strain = [](double t, const Vec2& x) {
    const Mat2 g = PolynomialCase::grad_velocity(t, x);
    return Mat2(0.5 * (g + g.transpose()));
  };
  exact.stress = [model](double t, const Vec2& x) {
    const Mat2 g = PolynomialCase::grad_velocity(t, x);
    return stress(2.0, Mat2(0.5 * (g + g.transpose())), model);
  };
  exact.pressure = [](double t, const Vec2& x) {
    return PolynomialCase::pressure(t, x);
  };
  return exact;
}

}  // namespace

LevelRun solve_level(const StudyConfig& config, const Triangulation& mesh,
                     int level) {
  const DofMap dofmap = build_dof_map(mesh, config.element);
  const QuadratureRule rule = quadrature_rule(config.quadrature_degree);
  const StressModel model{config.mu0, config.delta};

  ManufacturedCase mcase;
  mcase.p_minus = config.p_minus;
  mcase.alpha = config.alpha;
  mcase.delta_reg = config.delta;
  mcase.T = config.T;

  const ExponentField exponent = config.polynomial_debug
                                     ? constant_exponent(2.0)
                                     : exponent_field(mcase);

  UnsteadyProblem problem;
  problem.mesh = &mesh;
  problem.dofmap = &dofmap;
  problem.rule = &rule;
  problem.model = model;
  problem.variant = config.model;
  problem.grid = TimeGrid{config.T, 1 << (level + 2)};
  problem.newton = NewtonOptions{};
  problem.threads = effective_threads(config.threads);
  problem.initial_velocity = Eigen::VectorXd::Zero(dofmap.n_total);
  problem.exponent_snapshot = [&exponent, &mesh](double t_k) {
    return discretize_exponent(exponent, t_k, mesh);
  };
  if (config.polynomial_debug) {
    problem.step_data = [&mesh, &rule, model, &config](double t_k) {
      return sample_step_data(mesh, rule, [&](const Vec2& x) {
        return PolynomialCase::rhs(t_k, x, model, 2.0, config.model);
      });
    };
    problem.boundary_values = [&dofmap](double t_k) {
      return boundary_vector(dofmap, [t_k](const Vec2& x) {
        return PolynomialCase::velocity(t_k, x);
      });
    };
  } else {
    problem.step_data = [&mesh, &rule, model, mcase, &config](double t_k) {
      const double mean = pressure_mean(mcase, t_k, mesh, rule);
      return sample_step_data(mesh, rule, [&](const Vec2& x) {
        return rhs_data(mcase, t_k, x, model, config.model, mean);
      });
    };
    problem.boundary_values = [&dofmap, mcase](double t_k) {
      return boundary_vector(dofmap, [&mcase, t_k](const Vec2& x) {
        return dirichlet_value(mcase, t_k, x);
      });
    };
  }

  LevelRun run;
  run.states = time_march(problem, run.trace);
  for (const StepTrace& step : run.trace.steps)
    run.newton_iterations_total += step.iterations;

  const ExactSolution exact =
      config.polynomial_debug
          ? polynomial_solution(model)
          : manufactured_solution(mcase, model, mesh, rule);
  run.errors = error_quantities(run.states, problem.grid, mesh, dofmap, rule,
                                model, exponent, exact);
  return run;
}

namespace {

std::string format_error(double e) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", e);
  return buf;
}

std::string format_eoc(const std::optional<double>& e) {
  if (!e) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *e);
  return buf;
}

void write_csv_row(const LevelResult& row, double expected, std::ostream& out) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", row.h);
  out << row.level << "," << buf << ",";
  std::snprintf(buf, sizeof(buf), "%.6g", row.tau);
  out << buf << "," << format_error(row.errors.e_strain) << ","
      << format_error(row.errors.e_stress) << ","
      << format_error(row.errors.e_velocity) << ","
      << format_error(row.errors.e_pressure) << ","
      << format_eoc(row.eoc_strain) << "," << format_eoc(row.eoc_stress) << ","
      << format_eoc(row.eoc_velocity) << "," << format_eoc(row.eoc_pressure)
      << ",";
  std::snprintf(buf, sizeof(buf), "%.3f", expected);
  out << buf << "\n";
}

const char* kCsvHeader =
    "level,h,tau,e_Dv,e_S,e_v,e_pi,eoc_Dv,eoc_S,eoc_v,eoc_pi,expected_rate\n";

void write_timestamp(std::ostream& out) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  out << "# generated " << buf << "\n";
}

void attach_eocs(ErrorReport& report) {
  for (std::size_t n = 1; n < report.levels.size(); ++n) {
    const LevelResult& a = report.levels[n - 1];
    LevelResult& b = report.levels[n];
    b.eoc_strain = eoc(a.errors.e_strain, b.errors.e_strain, a.h, a.tau, b.h,
                       b.tau);
    b.eoc_stress = eoc(a.errors.e_stress, b.errors.e_stress, a.h, a.tau, b.h,
                       b.tau);
    b.eoc_velocity = eoc(a.errors.e_velocity, b.errors.e_velocity, a.h, a.tau,
                         b.h, b.tau);
    b.eoc_pressure = eoc(a.errors.e_pressure, b.errors.e_pressure, a.h, a.tau,
                         b.h, b.tau);
  }
}

}  // namespace

void write_csv(const ErrorReport& report, std::ostream& out,
               bool with_timestamp) {
  if (with_timestamp) write_timestamp(out);
  out << kCsvHeader;
  for (const LevelResult& row : report.levels)
    write_csv_row(row, report.expected, out);
}

ErrorReport run_study(const StudyConfig& config, std::ostream& log) {
  validate(config);
  std::filesystem::create_directories(config.out_dir);
  {
    std::ofstream echo(config.out_dir + "/config.echo");
    echo << config_echo(config);
  }

  ManufacturedCase mcase;
  mcase.p_minus = config.p_minus;
  mcase.alpha = config.alpha;

  ErrorReport report;
  report.expected = config.polynomial_debug ? 1.0 : expected_rate(mcase);

  std::ofstream csv(config.out_dir + "/results.csv");
  write_timestamp(csv);
  csv << kCsvHeader;

  Triangulation mesh = unit_square_initial();
  for (int level = 0; level <= config.max_level; ++level) {
    if (level > 0) mesh = refine(mesh);
    const TimeGrid grid{config.T, 1 << (level + 2)};
    log << "level " << level << ": cells " << mesh.num_cells() << ", steps "
        << grid.K << std::endl;

    LevelResult row;
    row.level = level;
    row.h = mesh.h;
    row.tau = grid.tau();
    try {
      const LevelRun run = solve_level(config, mesh, level);
      row.errors = run.errors;
      report.levels.push_back(row);
      attach_eocs(report);
      write_csv_row(report.levels.back(), report.expected, csv);
      csv.flush();
      log << "  e_Dv " << format_error(row.errors.e_strain) << "  e_S "
          << format_error(row.errors.e_stress) << "  e_v "
          << format_error(row.errors.e_velocity) << "  e_pi "
          << format_error(row.errors.e_pressure) << "  newton iters "
          << run.newton_iterations_total << std::endl;
    } catch (const SolverError& err) {
      log << "  solver failure: " << err.what() << std::endl;
      throw;
    }
  }
  return report;
}

}  // namespace varpns
