#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "varpns/study.hpp"

using namespace varpns;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = std::string("/tmp/varpns_test_") + name;
  std::ofstream out(path);
  out << body;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// CSV body without the leading timestamp comment line.
std::string stable_region(const std::string& csv) {
  const std::size_t nl = csv.find('\n');
  REQUIRE(csv.rfind("# generated ", 0) == 0);
  return csv.substr(nl + 1);
}

}  // namespace

TEST_CASE("config parsing: defaults, values, comments") {
  const std::string path = write_temp(
      "ok.cfg",
      "# comment\n"
      "element = mini\n"
      "model = stokes   # trailing comment\n"
      "p_minus = 2.25\n"
      "alpha = 0.5\n"
      "levels = 2\n");
  const StudyConfig config = parse_config_file(path);
  CHECK(config.element == ElementPair::MINI);
  CHECK(config.model == ModelVariant::Stokes);
  CHECK(config.p_minus == 2.25);
  CHECK(config.alpha == 0.5);
  CHECK(config.max_level == 2);
  // Untouched keys keep their defaults.
  CHECK(config.T == 0.1);
  CHECK(config.mu0 == 0.5);
  CHECK(config.delta == 1e-5);
  CHECK(config.quadrature_degree == 8);
}

TEST_CASE("config parsing: errors") {
  CHECK_THROWS_AS(parse_config_file("/tmp/varpns_no_such_file.cfg"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config_file(write_temp("unknown.cfg", "wibble = 3\nwobble = 4\n")),
      ConfigError);
  try {
    parse_config_file(write_temp("unknown2.cfg", "wibble = 3\n"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("wibble") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_file(write_temp("malformed.cfg", "levels 3\n")),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config_file(write_temp("badnum.cfg", "p_minus = two\n")),
      ConfigError);
}

TEST_CASE("config validation") {
  StudyConfig config;
  validate(config);
  config.p_minus = 1.5;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config.p_minus = 2.5;
  config.alpha = 1.5;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config.alpha = 1.0;
  config.max_level = 6;
  CHECK_THROWS_AS(validate(config), ConfigError);  // needs confirm_heavy
  config.confirm_heavy = true;
  validate(config);
  config.max_level = 7;
  CHECK_THROWS_AS(validate(config), ConfigError);
}

TEST_CASE("flag-style overrides win over file values") {
  StudyConfig config = parse_config_file(
      write_temp("base.cfg", "element = mini\np_minus = 2.25\n"));
  apply_config_key(config, "element", "taylor-hood");
  CHECK(config.element == ElementPair::TaylorHood);
  CHECK(config.p_minus == 2.25);
}

TEST_CASE("config echo round-trips through the parser") {
  StudyConfig config;
  config.element = ElementPair::MINI;
  config.p_minus = 2.75;
  config.alpha = 0.125;
  config.out_dir = "/tmp/varpns_echo_out";
  const std::string echoed = config_echo(config);
  const StudyConfig back =
      parse_config_file(write_temp("echo.cfg", echoed));
  CHECK(back.element == config.element);
  CHECK(back.p_minus == config.p_minus);
  CHECK(back.alpha == config.alpha);
  CHECK(back.out_dir == config.out_dir);
}

TEST_CASE("identical configs produce byte-identical CSV bodies") {
  StudyConfig config;
  config.element = ElementPair::MINI;
  config.model = ModelVariant::NavierStokes;
  config.p_minus = 2.5;
  config.alpha = 1.0;
  config.max_level = 1;
  config.threads = 2;

  std::ostringstream log;
  config.out_dir = "/tmp/varpns_csv_a";
  run_study(config, log);
  config.out_dir = "/tmp/varpns_csv_b";
  run_study(config, log);
  const std::string a = stable_region(read_file("/tmp/varpns_csv_a/results.csv"));
  const std::string b = stable_region(read_file("/tmp/varpns_csv_b/results.csv"));
  CHECK(a == b);
  CHECK(a.rfind("level,h,tau,e_Dv,e_S,e_v,e_pi,"
                "eoc_Dv,eoc_S,eoc_v,eoc_pi,expected_rate\n",
                0) == 0);
  // One header plus one row per level; echo written alongside.
  CHECK(std::count(a.begin(), a.end(), '\n') == 3);
  CHECK(read_file("/tmp/varpns_csv_b/config.echo") == config_echo(config));
}

#ifdef VARPNS_STUDY_BINARY
TEST_CASE("CLI exit codes: malformed config 2, success 0") {
  const std::string bad = write_temp("cli_bad.cfg", "nonsense = here\n");
  const std::string cmd_bad = std::string(VARPNS_STUDY_BINARY) +
                              " study --config " + bad + " >/dev/null 2>&1";
  const int rc_bad = std::system(cmd_bad.c_str());
  CHECK(WEXITSTATUS(rc_bad) == 2);

  const std::string good = write_temp(
      "cli_good.cfg",
      "element = mini\nlevels = 0\nout = /tmp/varpns_cli_out\n");
  const std::string cmd_good = std::string(VARPNS_STUDY_BINARY) +
                               " study --config " + good +
                               " --p-minus 2.5 >/dev/null 2>&1";
  const int rc_good = std::system(cmd_good.c_str());
  CHECK(WEXITSTATUS(rc_good) == 0);

  const std::string cmd_flags =
      std::string(VARPNS_STUDY_BINARY) + " study >/dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd_flags.c_str())) == 2);
}
#endif
