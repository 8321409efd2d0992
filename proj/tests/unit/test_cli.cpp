#include <algorithm>
#include <cctype>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "wpcn/config.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/sweep.hpp"

using namespace wpcn;
using doctest::Approx;

namespace {

const char* kBase =
    "lambda1 = 0.1\n"
    "lambda2 = 1\n"
    "p1 = 1\n"
    "t_i = 0.5\n"
    "t_e = 0.5\n"
    "d = 1\n"
    "alpha = 3\n"
    "sigma2_dbm = -50\n"
    "epsilon = 0.1\n"
    "e_sat = 0.5\n"
    "rho = 2\n"
    "zeta_db = -10\n";

std::string with_sweep(const std::string& sweep, const std::string& extra = "") {
  return sweep + std::string(kBase) + extra;
}

const std::string kEnergySweep = "sweep = energy-coverage\naxis = epsilon\ngrid = 0.05:0.05:0.2\noutput = e.csv\n";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::string> lines(const std::string& text) { return split(text, '\n'); }

}  // namespace

TEST_CASE("dBm keys convert to watts") {
  const auto c = parse_config(with_sweep(kEnergySweep));
  CHECK(c.base.sigma2 == Approx(1e-8).epsilon(1e-12));
  CHECK(c.base.zeta == Approx(0.1).epsilon(1e-12));

  auto text = with_sweep(kEnergySweep);
  text.replace(text.find("p1 = 1"), 6, "p1_dbm = 30");
  CHECK(parse_config(text).base.p1 == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("missing and invalid keys") {
  auto text = with_sweep(kEnergySweep);
  const auto pos = text.find("alpha = 3\n");
  auto missing = text;
  missing.erase(pos, 10);
  const auto msg = error_of(missing);
  CHECK(msg.find("alpha") != std::string::npos);
  CHECK(msg.find("missing") != std::string::npos);

  auto two = text;
  two.replace(pos, 9, "alpha = 2");
  CHECK(error_of(two).find("alpha must exceed 2") != std::string::npos);

  CHECK(error_of(text + "sweep = energy-coverage\n").find("given twice") != std::string::npos);
  CHECK(error_of(text + "sigma2 = 1e-8\n").find("given twice") != std::string::npos);
  CHECK_FALSE(error_of(with_sweep("sweep = nope\naxis = epsilon\ngrid = 1\noutput = a\n")).empty());
  CHECK_FALSE(error_of(with_sweep(kEnergySweep, "lambda1 = abc\n")).empty());
  CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
}

TEST_CASE("unknown key reports its line") {
  const auto text = with_sweep(kEnergySweep, "bogus = 1\n");
  const auto line = std::count(text.begin(), text.end(), '\n');
  const auto msg = error_of(text);
  CHECK(msg.find("t.cfg:" + std::to_string(line)) != std::string::npos);
  CHECK(msg.find("'bogus'") != std::string::npos);

  CHECK(error_of(with_sweep(kEnergySweep, "[series a]\nsweep = meta\n")).find("series") != std::string::npos);
  CHECK(error_of(with_sweep(kEnergySweep, "[series a]\n[series a]\n")).find("duplicate") != std::string::npos);
  CHECK_FALSE(error_of(with_sweep(kEnergySweep, "[series a]\nalpha = 1.5\n")).empty());
}

TEST_CASE("grid parsing") {
  auto c = parse_config(with_sweep(kEnergySweep));
  REQUIRE(c.sweep.grid.size() == 4);
  CHECK(c.sweep.grid[3] == Approx(0.2));
  c = parse_config(with_sweep("sweep = meta\naxis = x\ngrid = 0.1, 0.5 ,0.9\noutput = m.csv\n"));
  CHECK(c.sweep.grid == std::vector<double>{0.1, 0.5, 0.9});
  CHECK(error_of(with_sweep("sweep = meta\naxis = x\ngrid = 0.1, 0.1\noutput = m.csv\n")).find("strictly") !=
        std::string::npos);
  CHECK(error_of(with_sweep("sweep = meta\naxis = x\ngrid = 0.5, 0.1\noutput = m.csv\n")).find("strictly") !=
        std::string::npos);
  CHECK_FALSE(error_of(with_sweep("sweep = meta\naxis = x\ngrid = 1:0:2\noutput = m.csv\n")).empty());
  CHECK_FALSE(error_of(with_sweep("sweep = meta\naxis = beta\ngrid = 1\noutput = m.csv\n")).empty());
}

TEST_CASE("round trip through the written config") {
  const auto c = parse_config(with_sweep(kEnergySweep,
                                         "rate = 0.3\nmc_samples = 123\nmc_seed = 9\nmc_coupled = true\n"
                                         "[series a]\np1 = 0.5\n[series b]\nk_factor = 3\nrician_interferers = yes\n"));
  const auto text = write_config(c);
  const auto back = parse_config(text);
  CHECK(back == c);
  CHECK(write_config(back) == text);

  // Values that do not print exactly at 9 digits survive too.
  ParamValues v;
  v.lambda1 = 0.1 / 3.0;
  v.sigma2 = 1.234567890123e-9;
  auto c2 = c;
  c2.base = v;
  CHECK(parse_config(write_config(c2)).base == v);
}

TEST_CASE("series resolve on top of the base block") {
  const auto c = parse_config(with_sweep(kEnergySweep, "[series a]\np1 = 0.5\n[series b]\nk_factor = 3\n"));
  const auto s = resolve_series(c);
  REQUIRE(s.size() == 2);
  CHECK(s[0].params.p1() == 0.5);
  CHECK(s[0].params.lambda1() == 0.1);
  CHECK(s[1].params.p1() == 1.0);
  CHECK(s[1].k_factor == 3.0);
  CHECK(resolve_series(parse_config(with_sweep(kEnergySweep))).front().name == "base");
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.123456789012) == "0.123456789");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(1e-8) == "1e-08");
  CHECK(format_number(123456789012.0) == "1.23456789e+11");
}

TEST_CASE("CSV layout per sweep") {
  auto c = parse_config(with_sweep(kEnergySweep));
  CHECK(sweep_columns(c, false) == std::vector<std::string>{"series", "epsilon", "pi_eps_analytic", "flag"});
  CHECK(sweep_columns(c, true) ==
        std::vector<std::string>{"series", "epsilon", "pi_eps_analytic", "pi_eps_mc", "pi_eps_stderr", "flag"});
  c = parse_config(with_sweep("sweep = coverage\naxis = zeta_db\ngrid = -10, 0\noutput = c.csv\n"));
  CHECK(sweep_columns(c, false) ==
        std::vector<std::string>{"series", "zeta_db", "p1_analytic", "p2_analytic", "p2_power", "flag"});
  c = parse_config(with_sweep("sweep = coverage-rician\naxis = zeta_db\ngrid = -10, 0\noutput = c.csv\n"));
  CHECK(sweep_columns(c, false).size() == 10);  // always simulated

  std::ostringstream csv;
  const auto out = write_sweep(parse_config(with_sweep(kEnergySweep)), {}, csv);
  CHECK(out.rows == 4);
  CHECK(out.flagged == 0);
  const auto ls = lines(csv.str());
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "series,epsilon,pi_eps_analytic,flag");
  double prev = 2.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == "base");
    CHECK(f[3] == "ok");
    CHECK(f[2].find(',') == std::string::npos);
    const double v = std::stod(f[2]);
    CHECK(v < prev);
    prev = v;
    // 9 significant digits: mantissa has at most 9 digits.
    std::string digits;
    for (char ch : f[2].substr(0, f[2].find('e')))
      if (std::isdigit(static_cast<unsigned char>(ch))) digits += ch;
    digits.erase(0, digits.find_first_not_of('0'));
    CHECK(digits.size() <= 9);
  }
  CHECK(std::stod(split(ls[2])[2]) == Approx(0.5929).epsilon(1e-3));
}

TEST_CASE("sweep rows are flagged, not aborted") {
  // P1 so small that no secondary ever activates: the secondary link has no power.
  const auto c = parse_config(with_sweep("sweep = coverage\naxis = zeta_db\ngrid = -10, 0\noutput = c.csv\n",
                                         "[series weak]\np1 = 1e-9\n[series ok]\np1 = 1\n"));
  std::ostringstream csv;
  const auto out = write_sweep(c, {}, csv);
  CHECK(out.rows == 4);
  CHECK(out.flagged == 2);
  CHECK(out.nonconverged == 0);
  const auto ls = lines(csv.str());
  CHECK(split(ls[1]).back() == "unpowered");
  CHECK(split(ls[1])[3] == "nan");
  CHECK(std::stod(split(ls[1])[2]) > 0.0);
  CHECK(split(ls[3]).back() == "ok");
}

TEST_CASE("grid points are validated before any row is written") {
  const auto c = parse_config(with_sweep("sweep = transmit-prob\naxis = alpha\ngrid = 1, 3\noutput = t.csv\n"));
  std::ostringstream csv;
  CHECK_THROWS_AS(write_sweep(c, {}, csv), ConfigError);
  CHECK(csv.str().empty());
}

TEST_CASE("simulated sweep is deterministic in the seed") {
  auto c = parse_config(with_sweep(kEnergySweep, "mc_samples = 2000\nmc_replicates = 4\n"));
  RunOptions o;
  o.simulate = true;
  std::ostringstream a, b, d;
  write_sweep(c, o, a);
  write_sweep(c, o, b);
  CHECK(a.str() == b.str());
  o.seed = 7;
  write_sweep(c, o, d);
  CHECK(a.str() != d.str());
}

TEST_CASE("validation is deterministic and passes at the defaults") {
  const auto r1 = run_validation(20190101, 8);
  const auto r2 = run_validation(20190101, 8);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].quantity == r2[i].quantity);
    CHECK(r1[i].simulated == r2[i].simulated);
  }
  std::ostringstream table;
  CHECK(report_validation(r1, table));
  MESSAGE(table.str());
  std::ostringstream csv;
  write_validation_csv(r1, csv);
  CHECK(lines(csv.str()).size() == r1.size() + 1);

  auto failing = r1;
  failing.front().pass = false;
  std::ostringstream sink;
  CHECK_FALSE(report_validation(failing, sink));
  auto info_only = r1;
  for (auto& r : info_only)
    if (!r.gating) r.pass = false;
  CHECK(report_validation(info_only, sink));
}

TEST_CASE("bundled presets load") {
  namespace fs = std::filesystem;
  int n = 0;
  for (const auto& e : fs::directory_iterator(WPCN_PRESET_DIR)) {
    if (e.path().extension() != ".cfg") continue;
    CAPTURE(e.path().string());
    ExperimentConfig c;
    CHECK_NOTHROW(c = load_config(e.path().string()));
    if (c.sweep.name != "validate") CHECK_NOTHROW(sweep_columns(c, true));
    ++n;
  }
  CHECK(n == 8);
  const auto fig2 = load_config(std::string(WPCN_PRESET_DIR) + "/fig2.cfg");
  CHECK(fig2.sweep.name == "energy-coverage");
  CHECK(fig2.base == ParamValues{});
}
