#include "ahdcov/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ahdcov {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc() || ptr != end || t.empty() || !std::isfinite(value)) {
    throw ConfigError(key, "expected a number, got '" + t + "'");
  }
  return value;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw ConfigError(key, "expected a nonnegative integer, got '" + t + "'");
  }
  return value;
}

void flatten(const nlohmann::json& node, const std::string& prefix, KeyValues& out) {
  if (node.is_object()) {
    for (const auto& [k, v] : node.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (node.is_array()) {
    std::string joined;
    for (const auto& item : node) {
      if (!item.is_primitive() || item.is_null()) throw ConfigError(prefix, "arrays may only hold scalars");
      if (!joined.empty()) joined += ",";
      joined += item.is_string() ? item.get<std::string>() : item.dump();
    }
    out[prefix] = joined;
    return;
  }
  if (node.is_null()) throw ConfigError(prefix, "null is not a valid value");
  out[prefix] = node.is_string() ? node.get<std::string>() : node.dump();
}

std::vector<double> make_grid(double lo, double hi, std::uint64_t points, bool log_spacing) {
  std::vector<double> grid;
  if (points == 0) return grid;
  if (points == 1) return {lo};
  for (std::uint64_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid.push_back(log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
  }
  grid.back() = hi;
  return grid;
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "model.alphas", "model.breakpoints_m", "net.lambda_per_km2", "net.delta_h_m", "net.tau_db",
      "net.p_dbm",    "net.fading",          "net.rice_nc",        "net.rice_dof",  "mc.trials",
      "mc.seed",      "sweep.variable",      "sweep.grid",         "sweep.lo",      "sweep.hi",
      "sweep.points", "sweep.spacing",       "sweep.outputs",      "qos.epsilon"};
  return keys;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') throw ConfigError(key, "unterminated list");
    t = trim(std::string_view(t).substr(1, t.size() - 2));
  }
  std::vector<double> out;
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, item));
  return out;
}

KeyValues read_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

KeyValues read_json_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "top level must be an object");
  KeyValues out;
  flatten(doc, "", out);
  return out;
}

KeyValues load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_json_config(text);
  std::istringstream lines(text);
  return read_key_values(lines);
}

RunConfig parse_config(const KeyValues& base, const KeyValues& overrides) {
  KeyValues kv = base;
  for (const auto& [k, v] : overrides) kv[k] = v;
  const auto& known = known_config_keys();
  for (const auto& [k, v] : kv) {
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError(k, "unknown key");
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto number = [&](const std::string& key, double fallback) {
    const auto v = get(key);
    return v ? parse_number(key, *v) : fallback;
  };

  RunConfig rc;
  NetworkConfig& net = rc.network;

  const auto alphas = parse_number_list("model.alphas", get("model.alphas").value_or("4"));
  const auto breakpoints = parse_number_list("model.breakpoints_m", get("model.breakpoints_m").value_or(""));
  try {
    net.model = PathlossModel(alphas, breakpoints);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model", e.what());
  }

  const double lambda_km2 = number("net.lambda_per_km2", 1000.0);
  if (!(lambda_km2 > 0.0)) throw ConfigError("net.lambda_per_km2", "density must be positive");
  net.lambda = per_km2_to_per_m2(lambda_km2);
  net.ahd = number("net.delta_h_m", 0.0);
  if (!(net.ahd >= 0.0)) throw ConfigError("net.delta_h_m", "antenna height difference must be >= 0");
  net.tau = db_to_linear(number("net.tau_db", 0.0));
  net.power = dbm_to_watt(number("net.p_dbm", 23.0));
  if (get("net.p_dbm")) rc.notes.push_back("net.p_dbm: transmit power has no effect on SIR, CP or ST");

  const std::string fading = lower(trim(get("net.fading").value_or("rayleigh")));
  if (fading == "rayleigh") {
    net.fading = FadingModel::rayleigh();
  } else if (fading == "rice") {
    net.fading = FadingModel::rice(number("net.rice_nc", 1.0), number("net.rice_dof", 12.0));
    if (!(net.fading.nu_nc >= 0.0)) throw ConfigError("net.rice_nc", "noncentrality must be >= 0");
    if (!(net.fading.nu_dof >= 1.0)) throw ConfigError("net.rice_dof", "degrees of freedom must be >= 1");
  } else {
    throw ConfigError("net.fading", "expected 'rayleigh' or 'rice', got '" + fading + "'");
  }

  SweepSpec& sw = rc.sweep;
  if (const auto v = get("mc.trials")) sw.trials = parse_count("mc.trials", *v);
  if (const auto v = get("mc.seed")) sw.seed = parse_count("mc.seed", *v);

  const std::string variable = lower(trim(get("sweep.variable").value_or("lambda")));
  if (variable == "lambda") {
    sw.variable = SweepSpec::Variable::Lambda;
  } else if (variable == "ahd" || variable == "delta_h") {
    sw.variable = SweepSpec::Variable::Ahd;
  } else {
    throw ConfigError("sweep.variable", "expected 'lambda' or 'ahd', got '" + variable + "'");
  }
  const bool is_lambda = sw.variable == SweepSpec::Variable::Lambda;

  if (const auto v = get("sweep.grid")) {
    sw.grid = parse_number_list("sweep.grid", *v);
  } else if (get("sweep.lo") || get("sweep.hi") || get("sweep.points")) {
    const double lo = number("sweep.lo", std::nan(""));
    const double hi = number("sweep.hi", std::nan(""));
    if (!get("sweep.lo") || !get("sweep.hi") || !get("sweep.points")) {
      throw ConfigError("sweep", "sweep.lo, sweep.hi and sweep.points must be given together");
    }
    const std::uint64_t points = parse_count("sweep.points", *get("sweep.points"));
    const std::string spacing = lower(trim(get("sweep.spacing").value_or(is_lambda ? "log" : "linear")));
    if (spacing != "log" && spacing != "linear") {
      throw ConfigError("sweep.spacing", "expected 'log' or 'linear', got '" + spacing + "'");
    }
    if (spacing == "log" && !(lo > 0.0)) throw ConfigError("sweep.lo", "log spacing needs a positive lower end");
    if (points > 1 && !(hi > lo)) throw ConfigError("sweep.hi", "must exceed sweep.lo");
    sw.grid = make_grid(lo, hi, points, spacing == "log");
  } else {
    sw.grid = {is_lambda ? lambda_km2 : net.ahd};
  }
  for (std::size_t i = 0; i < sw.grid.size(); ++i) {
    if (i > 0 && !(sw.grid[i] > sw.grid[i - 1])) throw ConfigError("sweep.grid", "grid must be strictly increasing");
    if (is_lambda ? !(sw.grid[i] > 0.0) : !(sw.grid[i] >= 0.0)) {
      throw ConfigError("sweep.grid", is_lambda ? "densities must be positive" : "heights must be >= 0");
    }
  }

  if (const auto v = get("sweep.outputs")) {
    sw.analytic = sw.mc = sw.bounds = false;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string o = lower(trim(item));
      if (o == "analytic") {
        sw.analytic = true;
      } else if (o == "mc") {
        sw.mc = true;
      } else if (o == "bounds") {
        sw.bounds = true;
      } else if (!o.empty()) {
        throw ConfigError("sweep.outputs", "unknown output '" + o + "' (expected analytic, mc, bounds)");
      }
    }
  }
  if (sw.mc && sw.trials < 1000) throw ConfigError("mc.trials", "at least 1000 trials are required");
  if (sw.bounds && net.model.segments() < 3) {
    throw ConfigError("sweep.outputs", "bounds need a model with at least three segments");
  }

  if (const auto v = get("qos.epsilon")) {
    const double eps = parse_number("qos.epsilon", *v);
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("qos.epsilon", "coverage requirement must lie in (0, 1)");
    rc.epsilon = eps;
  }
  return rc;
}

}  // namespace ahdcov
