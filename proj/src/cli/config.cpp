#include "wpcn/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wpcn/errors.hpp"

namespace wpcn {

namespace {

struct Context {
  const std::string& origin;
  int line;
};

[[noreturn]] void fail(const Context& ctx, const std::string& key, const std::string& reason) {
  std::ostringstream os;
  os << ctx.origin;
  if (ctx.line > 0) os << ":" << ctx.line;
  os << ": ";
  if (!key.empty()) os << "key '" << key << "': ";
  os << reason;
  throw ConfigError(os.str());
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const Context& ctx, const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail(ctx, key, "not a finite number: '" + text + "'");
  return v;
}

std::uint64_t parse_count(const Context& ctx, const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) fail(ctx, key, "not a non-negative integer: '" + text + "'");
  return v;
}

bool parse_bool(const Context& ctx, const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  fail(ctx, key, "expected true or false");
}

// "a:step:b" or a comma-separated list.
std::vector<double> parse_grid(const Context& ctx, const std::string& key, const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_double(ctx, key, trim(item)));
    if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0])
      fail(ctx, key, "range must be start:step:stop with step > 0 and stop >= start");
    const double n = std::floor((parts[2] - parts[0]) / parts[1] + 1e-9);
    if (n > 1e6) fail(ctx, key, "range has too many points");
    for (int i = 0; i <= static_cast<int>(n); ++i) out.push_back(parts[0] + i * parts[1]);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(ctx, key, trim(item)));
  }
  return out;
}

// Model keys shared by the base block and series blocks. Returns false when
// `key` is not a model key.
bool apply_model_key(ParamValues& v, const Context& ctx, const std::string& key, const std::string& value) {
  auto num = [&] { return parse_double(ctx, key, value); };
  if (key == "lambda1") v.lambda1 = num();
  else if (key == "lambda2") v.lambda2 = num();
  else if (key == "p1") v.p1 = num();
  else if (key == "p1_dbm") v.p1 = dbm_to_watts(num());
  else if (key == "t_i") v.t_i = num();
  else if (key == "t_e") v.t_e = num();
  else if (key == "d") v.d = num();
  else if (key == "alpha") v.alpha = num();
  else if (key == "sigma2") v.sigma2 = num();
  else if (key == "sigma2_dbm") v.sigma2 = dbm_to_watts(num());
  else if (key == "epsilon") v.epsilon = num();
  else if (key == "e_sat") v.e_sat = num();
  else if (key == "rho") v.rho = num();
  else if (key == "zeta") v.zeta = num();
  else if (key == "zeta_db") v.zeta = db_to_linear(num());
  else if (key == "rate") v.rate = num();
  else return false;
  return true;
}

// Canonical name of a model key (unit suffixes stripped).
std::string canonical(const std::string& key) {
  if (key == "p1_dbm") return "p1";
  if (key == "sigma2_dbm") return "sigma2";
  if (key == "zeta_db") return "zeta";
  return key;
}

constexpr const char* kRequired[] = {"lambda1", "lambda2", "p1",      "t_i",   "t_e", "d",
                                     "alpha",   "sigma2",  "epsilon", "e_sat", "rho", "zeta"};

bool is_axis(const std::string& a) {
  static const char* axes[] = {"lambda1", "lambda2", "p1",  "t_i", "t_e",  "d",       "alpha",
                               "sigma2",  "epsilon", "e_sat", "rho", "zeta", "zeta_db", "x"};
  return std::find_if(std::begin(axes), std::end(axes), [&](const char* s) { return a == s; }) != std::end(axes);
}

void check_params(const Context& ctx, const ParamValues& v) {
  try {
    SystemParams{v};
  } catch (const DomainError& e) {
    fail(ctx, "", e.what());
  }
}

}  // namespace

void SweepSpec::validate() const {
  if (std::find_if(std::begin(kSweepNames), std::end(kSweepNames), [&](const char* s) { return name == s; }) ==
      std::end(kSweepNames))
    throw ConfigError("unknown sweep '" + name + "'");
  if (name == "validate") return;
  if (!is_axis(swept_param)) throw ConfigError("axis '" + swept_param + "' is not a parameter, zeta_db or x");
  if (grid.empty()) throw ConfigError("grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ConfigError("grid must be strictly increasing");
  if (output_path.empty()) throw ConfigError("output path is empty");
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::vector<std::string> seen;
  std::vector<std::string> series_seen;
  SeriesSpec* current = nullptr;
  std::istringstream in(text);
  std::string raw;
  Context ctx{origin, 0};
  bool have_sweep = false;
  while (std::getline(in, raw)) {
    ++ctx.line;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ctx, "", "unterminated section header");
      const std::string inner = trim(line.substr(1, line.size() - 2));
      if (inner.rfind("series", 0) != 0) fail(ctx, "", "unknown section '" + inner + "'");
      const std::string name = trim(inner.substr(6));
      if (name.empty()) fail(ctx, "", "series needs a name");
      for (const auto& s : cfg.series)
        if (s.name == name) fail(ctx, "", "duplicate series '" + name + "'");
      cfg.series.push_back({name, {}});
      current = &cfg.series.back();
      series_seen.clear();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ctx, "", "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ctx, "", "empty key");
    if (value.empty()) fail(ctx, key, "empty value");

    auto& dup = current ? series_seen : seen;
    const std::string canon = canonical(key);
    if (std::find(dup.begin(), dup.end(), canon) != dup.end()) fail(ctx, key, "given twice");
    dup.push_back(canon);

    if (current) {
      ParamValues probe = cfg.base;
      if (apply_model_key(probe, ctx, key, value) || key == "k_factor" || key == "rician_interferers") {
        if (key == "k_factor" && !(parse_double(ctx, key, value) >= 0.0)) fail(ctx, key, "must be >= 0");
        if (key == "rician_interferers") parse_bool(ctx, key, value);
        current->overrides.emplace_back(key, value);
        continue;
      }
      fail(ctx, key, "unknown key in series block");
    }

    if (apply_model_key(cfg.base, ctx, key, value)) continue;
    if (key == "sweep") {
      cfg.sweep.name = value;
      have_sweep = true;
    } else if (key == "axis") {
      if (!is_axis(value)) fail(ctx, key, "not a parameter, zeta_db or x: '" + value + "'");
      cfg.sweep.swept_param = value;
    } else if (key == "grid") {
      cfg.sweep.grid = parse_grid(ctx, key, value);
      if (cfg.sweep.grid.empty()) fail(ctx, key, "grid is empty");
      for (std::size_t i = 1; i < cfg.sweep.grid.size(); ++i)
        if (!(cfg.sweep.grid[i] > cfg.sweep.grid[i - 1])) fail(ctx, key, "grid must be strictly increasing");
    } else if (key == "output") {
      cfg.sweep.output_path = value;
    } else if (key == "mc_samples") {
      cfg.sim.samples = parse_count(ctx, key, value);
      if (cfg.sim.samples < 1) fail(ctx, key, "must be >= 1");
    } else if (key == "mc_disk_radius") {
      cfg.sim.disk_radius = parse_double(ctx, key, value);
      if (!(cfg.sim.disk_radius > 0.0)) fail(ctx, key, "must be > 0");
    } else if (key == "mc_replicates") {
      cfg.sim.replicates = parse_count(ctx, key, value);
      if (cfg.sim.replicates < 1) fail(ctx, key, "must be >= 1");
    } else if (key == "mc_seed") {
      cfg.sim.seed = parse_count(ctx, key, value);
    } else if (key == "mc_coupled") {
      cfg.sim.coupled = parse_bool(ctx, key, value);
    } else if (key == "k_factor") {
      cfg.k_factor = parse_double(ctx, key, value);
      if (!(cfg.k_factor >= 0.0)) fail(ctx, key, "must be >= 0");
    } else if (key == "rician_interferers") {
      cfg.rician_interferers = parse_bool(ctx, key, value);
    } else {
      fail(ctx, key, "unknown key");
    }
  }
  const Context end{origin, 0};
  if (!have_sweep) fail(end, "sweep", "missing");
  for (const char* k : kRequired)
    if (std::find(seen.begin(), seen.end(), k) == seen.end()) fail(end, k, "missing");
  try {
    cfg.sweep.validate();
  } catch (const ConfigError& e) {
    fail(end, "", e.what());
  }
  check_params(end, cfg.base);
  resolve_series(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), path);
}

std::vector<ResolvedSeries> resolve_series(const ExperimentConfig& config) {
  std::vector<ResolvedSeries> out;
  auto base_series = [&](const std::string& name) {
    return ResolvedSeries{name, SystemParams(config.base), config.k_factor, config.rician_interferers};
  };
  if (config.series.empty()) {
    out.push_back(base_series("base"));
    return out;
  }
  for (const auto& s : config.series) {
    ParamValues v = config.base;
    ResolvedSeries r{s.name, SystemParams(config.base), config.k_factor, config.rician_interferers};
    const std::string origin = "series '" + s.name + "'";
    Context ctx{origin, 0};
    for (const auto& [k, val] : s.overrides) {
      if (k == "k_factor") r.k_factor = parse_double(ctx, k, val);
      else if (k == "rician_interferers") r.rician_interferers = parse_bool(ctx, k, val);
      else if (!apply_model_key(v, ctx, k, val)) fail(ctx, k, "unknown key");
    }
    try {
      r.params = SystemParams(v);
    } catch (const DomainError& e) {
      fail(ctx, "", e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::string write_config(const ExperimentConfig& c) {
  std::ostringstream os;
  auto num = [](double v) { return format_number(v, 17); };
  const auto& v = c.base;
  os << "sweep = " << c.sweep.name << "\n";
  if (!c.sweep.swept_param.empty()) os << "axis = " << c.sweep.swept_param << "\n";
  if (!c.sweep.grid.empty()) {
    os << "grid = ";
    for (std::size_t i = 0; i < c.sweep.grid.size(); ++i) os << (i ? ", " : "") << num(c.sweep.grid[i]);
    os << "\n";
  }
  if (!c.sweep.output_path.empty()) os << "output = " << c.sweep.output_path << "\n";
  os << "lambda1 = " << num(v.lambda1) << "\n"
     << "lambda2 = " << num(v.lambda2) << "\n"
     << "p1 = " << num(v.p1) << "\n"
     << "t_i = " << num(v.t_i) << "\n"
     << "t_e = " << num(v.t_e) << "\n"
     << "d = " << num(v.d) << "\n"
     << "alpha = " << num(v.alpha) << "\n"
     << "sigma2 = " << num(v.sigma2) << "\n"
     << "epsilon = " << num(v.epsilon) << "\n"
     << "e_sat = " << num(v.e_sat) << "\n"
     << "rho = " << num(v.rho) << "\n"
     << "zeta = " << num(v.zeta) << "\n";
  if (v.rate) os << "rate = " << num(*v.rate) << "\n";
  os << "k_factor = " << num(c.k_factor) << "\n"
     << "rician_interferers = " << (c.rician_interferers ? "true" : "false") << "\n"
     << "mc_samples = " << c.sim.samples << "\n"
     << "mc_disk_radius = " << num(c.sim.disk_radius) << "\n"
     << "mc_replicates = " << c.sim.replicates << "\n"
     << "mc_seed = " << c.sim.seed << "\n"
     << "mc_coupled = " << (c.sim.coupled ? "true" : "false") << "\n";
  for (const auto& s : c.series) {
    os << "\n[series " << s.name << "]\n";
    for (const auto& [k, val] : s.overrides) os << k << " = " << val << "\n";
  }
  return os.str();
}

bool operator==(const SweepSpec& a, const SweepSpec& b) {
  return a.name == b.name && a.swept_param == b.swept_param && a.grid == b.grid && a.output_path == b.output_path;
}
bool operator==(const SeriesSpec& a, const SeriesSpec& b) { return a.name == b.name && a.overrides == b.overrides; }
bool operator==(const SimSettings& a, const SimSettings& b) {
  return a.samples == b.samples && a.disk_radius == b.disk_radius && a.replicates == b.replicates &&
         a.seed == b.seed && a.coupled == b.coupled;
}
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.base == b.base && a.sweep == b.sweep && a.series == b.series && a.sim == b.sim &&
         a.k_factor == b.k_factor && a.rician_interferers == b.rician_interferers;
}

}  // namespace wpcn
