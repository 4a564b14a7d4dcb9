#include "hetopt/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hetopt/errors.hpp"

namespace hetopt {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& value, const std::string& where) {
  const double v = parse_double(value, where);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError(where + ": expected an integer, got '" + value + "'");
  return i;
}

std::uint64_t parse_u64(const std::string& value, const std::string& where) {
  std::uint64_t v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ConfigError(where + ": expected an unsigned integer, got '" + value + "'");
  return v;
}

}  // namespace

std::string fading_model_name(FadingModel model) {
  return model == FadingModel::none ? "none" : "rayleigh_block";
}

void validate(const NetworkConfig& c) {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };
  require(c.num_macro_sites >= 1, "num_macro_sites must be >= 1");
  require(c.sectors_per_macro >= 1, "sectors_per_macro must be >= 1");
  require(c.picos_per_sector >= 0, "picos_per_sector must be >= 0");
  require(c.num_ues >= 1, "num_ues must be >= 1");
  require(c.num_rbs >= 1, "num_rbs must be >= 1");
  require(c.hotspot_radius > 0, "hotspot_radius must be > 0");
  require(c.hotspot_ue_fraction >= 0.0 && c.hotspot_ue_fraction <= 1.0,
          "hotspot_ue_fraction must be in [0,1]");
  require(c.inter_site_distance > 2.0 * c.hotspot_radius,
          "inter_site_distance must exceed 2*hotspot_radius");
  require(c.bandwidth_hz > 0, "bandwidth must be > 0");
  require(c.shadowing_sigma_db >= 0, "shadowing_sigma must be >= 0");
  require(c.ue_weight > 0, "ue_weight must be > 0");
  if (c.picos_per_sector == 0 && c.hotspot_ue_fraction > 0)
    problems.push_back("hotspot_ue_fraction must be 0 when there are no picos");
  if (!c.ue_weights.empty()) {
    require(static_cast<int>(c.ue_weights.size()) == c.num_ues,
            "ue_weights must have num_ues entries");
    for (double w : c.ue_weights)
      if (!(w > 0)) {
        problems.push_back("every UE weight must be > 0");
        break;
      }
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

NetworkConfig parse_config_text(const std::string& text, const std::string& origin) {
  NetworkConfig config;
  using Setter = std::function<void(NetworkConfig&, const std::string&, const std::string&)>;
  static const std::map<std::string, Setter> setters = {
      {"inter_site_distance", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.inter_site_distance = parse_double(v, w); }},
      {"num_macro_sites", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.num_macro_sites = parse_int(v, w); }},
      {"sectors_per_macro", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.sectors_per_macro = parse_int(v, w); }},
      {"picos_per_sector", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.picos_per_sector = parse_int(v, w); }},
      {"hotspot_radius", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.hotspot_radius = parse_double(v, w); }},
      {"num_ues", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.num_ues = parse_int(v, w); }},
      {"hotspot_ue_fraction", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.hotspot_ue_fraction = parse_double(v, w); }},
      {"macro_power", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.macro_power_dbm = parse_double(v, w); }},
      {"pico_power", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.pico_power_dbm = parse_double(v, w); }},
      {"bandwidth", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.bandwidth_hz = parse_double(v, w); }},
      {"num_rbs", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.num_rbs = parse_int(v, w); }},
      {"noise_psd", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.noise_psd_dbm_hz = parse_double(v, w); }},
      {"shadowing_sigma", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.shadowing_sigma_db = parse_double(v, w); }},
      {"fading_model",
       [](NetworkConfig& c, const std::string& v, const std::string& w) {
         if (v == "none")
           c.fading = FadingModel::none;
         else if (v == "rayleigh_block")
           c.fading = FadingModel::rayleigh_block;
         else
           throw ConfigError(w + ": fading_model must be 'none' or 'rayleigh_block', got '" + v + "'");
       }},
      {"seed", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.seed = parse_u64(v, w); }},
      {"ue_weight", [](NetworkConfig& c, const std::string& v, const std::string& w) { c.ue_weight = parse_double(v, w); }},
  };

  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": missing value for '" + key + "'");
    it->second(config, value, where);
  }
  validate(config);
  return config;
}

NetworkConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace hetopt
