#include "frl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "frl/modes.hpp"

namespace frl::config {

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);

const std::map<std::string, Json>& default_table() {
  static const std::map<std::string, Json> table = [] {
    std::map<std::string, Json> t;
    t["measure"] = {{"alpha", kCantorDim}, {"depth", 6},  {"lambda", 100.0},          {"c_ell", 2.0},
                    {"resolution_per_wavelength", 16.0}, {"atom_budget", 4194304}, {"r_points", 25}};
    t["energy"] = {{"alpha", kCantorDim}, {"depth", 6}, {"lambda", 50.0}, {"c_ell", 2.0},
                   {"s", Json::array({0.5, 0.3, 0.8})}};
    t["kernel"] = {{"lambda", 100.0}, {"h_width", 0.05}, {"x_max", 4.0}, {"samples_per_wavelength", 32.0},
                   {"points", 400}};
    t["hecke-returns"] = {{"a", 2},
                          {"b", 3},
                          {"q", 6},
                          {"n_max", 20},
                          {"kappas", Json::array({0.05, 0.1, 0.25, 0.5, 1.0})},
                          {"g_count", 4},
                          {"budget", 67108864}};
    t["amplifier"] = {{"N", 400}, {"q", 6}, {"draws", 1000}};
    t["integrals"] = {{"lambda", 50.0}, {"alpha", 0.7},    {"depth", 10},
                      {"half_width", 3.0}, {"h_width", 0.05}, {"c_ell", 2.0},
                      {"resolution_per_wavelength", 8.0}, {"g_count", 4}, {"uniform_bound", false}};
    t["beta-scaling"] = {{"lambda", 100.0},
                         {"alpha", 0.9},
                         {"depth", 10},
                         {"beta_exponents", Json::array({0.3, 0.4, 0.5, 0.6})},
                         {"half_width", 3.0},
                         {"h_width", 0.05},
                         {"c_ell", 2.0},
                         {"resolution_per_wavelength", 8.0}};
    t["rapid-decay"] = {{"lambda", 100.0},
                        {"alpha", 0.9},
                        {"depth", 10},
                        {"beta_exponent", 0.5},
                        {"epsilon0", 0.1},
                        {"multipliers", Json::array({0.25, 0.5, 1.0, 2.0, 4.0})},
                        {"half_width", 0.5},
                        {"h_width", 0.05},
                        {"c_ell", 2.0},
                        {"resolution_per_wavelength", 8.0}};
    t["restrict"] = {{"kind", "highest_weight"},
                     {"degrees", Json::array({64, 128, 256, 512})},
                     {"alpha", 0.7},
                     {"depth", 14},
                     {"geodesic", "equator"}};
    t["kn"] = {{"kind", "highest_weight"}, {"degree", 64}, {"width_factor", 1.0}, {"spacing_factor", 0.25},
               {"budget", 16777216}};
    t["theorem3"] = {{"kind", "highest_weight"},
                     {"degrees", Json::array({64, 128, 256, 384, 512})},
                     {"alpha", 0.7},
                     {"depth", 14},
                     {"geodesic", "equator"},
                     {"width_factor", 1.0},
                     {"spacing_factor", 0.25},
                     {"budget", 16777216}};
    t["exponents"] = {{"alpha_grid", Json::array()}};
    t["dyadic"] = {{"surface", "flat"},
                   {"lambda", 400.0},
                   {"scale", 0.5},
                   {"separations", Json::array({0.0, 0.005, 0.01, 0.02, 0.04, 0.08, 0.16, 0.32, 0.5})},
                   {"alpha", 0.7},
                   {"depth", 10},
                   {"c_ell", 2.0},
                   {"with_weight", true}};
    return t;
  }();
  return table;
}

bool same_kind(const Json& def, const Json& v) {
  if (def.is_number_integer()) return v.is_number_integer();
  if (def.is_number()) return v.is_number();
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_string()) return v.is_string();
  if (def.is_array()) {
    if (!v.is_array()) return false;
    const bool ints = !def.empty() && def.front().is_number_integer();
    return std::all_of(v.begin(), v.end(), [&](const Json& e) { return ints ? e.is_number_integer() : e.is_number(); });
  }
  return false;
}

const char* kind_name(const Json& def) {
  if (def.is_number_integer()) return "an integer";
  if (def.is_number()) return "a number";
  if (def.is_boolean()) return "a boolean";
  if (def.is_string()) return "a string";
  if (!def.empty() && def.front().is_number_integer()) return "an array of integers";
  return "an array of numbers";
}

class Checker {
 public:
  explicit Checker(const Json& p) : p_(p) {}

  double num(const std::string& k) const { return p_.at(k).get<double>(); }
  long long integer(const std::string& k) const { return p_.at(k).get<long long>(); }

  void range(const std::string& k, double lo, double hi, bool open_lo = false, bool open_hi = false) const {
    const double v = num(k);
    check_value(k, v, lo, hi, open_lo, open_hi);
  }
  void each(const std::string& k, double lo, double hi, bool open_lo = false, bool open_hi = false) const {
    for (const auto& e : p_.at(k)) check_value(k, e.get<double>(), lo, hi, open_lo, open_hi);
  }
  void nonempty(const std::string& k) const {
    if (p_.at(k).empty()) throw ConfigError(k, "must not be empty");
  }
  void one_of(const std::string& k, const std::vector<std::string>& options) const {
    const auto v = p_.at(k).get<std::string>();
    if (std::find(options.begin(), options.end(), v) == options.end()) {
      std::string list;
      for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
      throw ConfigError(k, "must be one of {" + list + "}, got '" + v + "'");
    }
  }

 private:
  static void check_value(const std::string& k, double v, double lo, double hi, bool open_lo, bool open_hi) {
    const bool ok = std::isfinite(v) && (open_lo ? v > lo : v >= lo) && (open_hi ? v < hi : v <= hi);
    if (!ok) {
      std::ostringstream os;
      os << "value " << v << " outside " << (open_lo ? "(" : "[") << lo << ", " << hi << (open_hi ? ")" : "]");
      throw ConfigError(k, os.str());
    }
  }

  const Json& p_;
};

void check_measure_keys(const Checker& c, bool alpha_open_one = false) {
  c.range("alpha", 0.0, 1.0, true, alpha_open_one);
  c.range("depth", 0, 40);
}

void check_integral_keys(const Checker& c) {
  check_measure_keys(c);
  c.range("lambda", 10.0, 200.0);
  c.range("h_width", 0.0, 0.0625, true);
  c.range("c_ell", 0.5, 8.0);
  c.range("resolution_per_wavelength", 8.0, 64.0);
  c.range("half_width", 0.1, 3.5);
}

void validate(const std::string& e, const Json& p) {
  const Checker c(p);
  if (e == "measure") {
    check_measure_keys(c);
    c.range("lambda", 1.0, 1e5);
    c.range("c_ell", 0.5, 8.0);
    c.range("resolution_per_wavelength", 8.0, 64.0);
    c.range("atom_budget", 1, 1e9);
    c.range("r_points", 2, 10000);
  } else if (e == "energy") {
    check_measure_keys(c);
    c.range("lambda", 1.0, 1e4);
    c.range("c_ell", 0.5, 8.0);
    c.nonempty("s");
    c.each("s", 0.0, 1.0, true, true);
  } else if (e == "kernel") {
    c.range("lambda", 10.0, 1e4);
    c.range("h_width", 0.0, 0.0625, true);
    c.range("x_max", 0.0, 20.0, true);
    c.range("samples_per_wavelength", 16.0, 1024.0);
    c.range("points", 2, 1e6);
  } else if (e == "hecke-returns") {
    c.range("a", 1, 1e6);
    c.range("b", -1e6, 1e6);
    if (c.integer("b") == 0) throw ConfigError("b", "must be nonzero");
    c.range("q", 1, 1e9);
    c.range("n_max", 1, 200);
    c.nonempty("kappas");
    c.each("kappas", 0.0, 1.0);
    c.range("g_count", 0, 64);
    c.range("budget", 1, 1e12);
  } else if (e == "amplifier") {
    c.range("N", 4, 1e8);
    c.range("q", 1, 1e9);
    c.range("draws", 1, 1e7);
  } else if (e == "integrals") {
    check_integral_keys(c);
    c.range("g_count", 0, 64);
  } else if (e == "beta-scaling") {
    check_integral_keys(c);
    c.nonempty("beta_exponents");
    c.each("beta_exponents", 0.0, 1.0);
    if (p.at("beta_exponents").size() < 2) throw ConfigError("beta_exponents", "need at least two values");
  } else if (e == "rapid-decay") {
    check_integral_keys(c);
    c.range("beta_exponent", 0.0, 1.0);
    c.range("epsilon0", 0.0, 0.5, true, true);
    c.nonempty("multipliers");
    c.each("multipliers", 0.0, 100.0, true);
  } else if (e == "restrict" || e == "theorem3") {
    c.one_of("kind", {"zonal", "highest_weight"});
    c.one_of("geodesic", {"equator", "meridian"});
    c.nonempty("degrees");
    c.each("degrees", 1, modes::kMaxDegree);
    if (e == "theorem3") {
      c.range("alpha", 0.5, 1.0, true);
      c.range("depth", 0, 40);
      c.range("width_factor", 0.0, 10.0, true);
      c.range("spacing_factor", 0.0, 0.25, true);
      c.range("budget", 1, 1e12);
    } else {
      check_measure_keys(c);
      if (p.at("degrees").size() < 3) throw ConfigError("degrees", "need at least three degrees for a fit");
    }
  } else if (e == "kn") {
    c.one_of("kind", {"zonal", "highest_weight"});
    c.range("degree", 1, modes::kMaxDegree);
    c.range("width_factor", 0.0, 10.0, true);
    c.range("spacing_factor", 0.0, 0.25, true);
    c.range("budget", 1, 1e12);
  } else if (e == "exponents") {
    c.each("alpha_grid", 0.0, 2.0, true);
  } else if (e == "dyadic") {
    c.one_of("surface", {"flat", "sphere"});
    c.range("lambda", 4.0, 1e6);
    c.range("scale", 1.0 / std::sqrt(c.num("lambda")), 0.5);
    c.nonempty("separations");
    c.each("separations", 0.0, 0.5);
    check_measure_keys(c);
    c.range("c_ell", 0.5, 8.0);
  }
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"measure",     "energy",   "kernel", "hecke-returns", "amplifier",
                                                 "integrals",   "beta-scaling", "rapid-decay", "restrict",
                                                 "kn",          "theorem3", "exponents", "dyadic"};
  return names;
}

Json defaults_for(const std::string& experiment) {
  const auto& t = default_table();
  const auto it = t.find(experiment);
  if (it == t.end()) throw ConfigError("experiment", "unknown experiment '" + experiment + "'");
  return it->second;
}

ExperimentConfig make_config(const std::string& experiment, const Json& user, std::string out_dir,
                             std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.params = defaults_for(experiment);
  cfg.out_dir = std::move(out_dir);
  cfg.seed = seed;
  if (!user.is_object()) throw ConfigError("config", "top level must be an object");
  for (const auto& [key, value] : user.items()) {
    if (!cfg.params.contains(key)) throw ConfigError(key, "unknown parameter for '" + experiment + "'");
    const Json& def = cfg.params.at(key);
    if (!same_kind(def, value)) throw ConfigError(key, std::string("must be ") + kind_name(def));
    cfg.params[key] = value;
  }
  validate(experiment, cfg.params);
  return cfg;
}

Json parse_text(const std::string& text) {
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw ParseError(1, "top level must be an object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
}

Json parse_overrides(const std::vector<std::string>& overrides) {
  Json out = Json::object();
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError(o, "override must have the form key=value");
    const std::string key = o.substr(0, eq), raw = o.substr(eq + 1);
    try {
      out[key] = Json::parse(raw);
    } catch (const nlohmann::json::parse_error&) {
      out[key] = raw;
    }
  }
  return out;
}

ExperimentConfig load_config(const std::string& experiment, const std::optional<std::string>& path,
                             const std::vector<std::string>& overrides, std::string out_dir,
                             std::optional<std::uint64_t> seed) {
  defaults_for(experiment);
  Json user = Json::object();
  std::uint64_t file_seed = 1;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("config", "cannot read '" + *path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    user = parse_text(ss.str());
    if (user.contains("experiment")) {
      if (!user["experiment"].is_string() || user["experiment"].get<std::string>() != experiment) {
        throw ConfigError("experiment", "config file names a different experiment");
      }
      user.erase("experiment");
    }
    if (user.contains("seed")) {
      if (!user["seed"].is_number_unsigned()) throw ConfigError("seed", "must be a nonnegative integer");
      file_seed = user["seed"].get<std::uint64_t>();
      user.erase("seed");
    }
  }
  const Json extra = parse_overrides(overrides);
  for (const auto& [k, v] : extra.items()) user[k] = v;
  return make_config(experiment, user, std::move(out_dir), seed.value_or(file_seed));
}

}  // namespace frl::config
