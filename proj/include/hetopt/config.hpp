#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace hetopt {

enum class FadingModel { none, rayleigh_block };

// Scenario parameters.  Powers are totals per tier, split uniformly over RBs.
struct NetworkConfig {
  double inter_site_distance = 500.0;  // m
  int num_macro_sites = 1;
  int sectors_per_macro = 3;
  int picos_per_sector = 2;
  double hotspot_radius = 40.0;  // m
  int num_ues = 120;
  double hotspot_ue_fraction = 2.0 / 3.0;
  double macro_power_dbm = 46.0;
  double pico_power_dbm = 30.0;
  double bandwidth_hz = 20e6;
  int num_rbs = 100;
  double noise_psd_dbm_hz = -174.0;
  double shadowing_sigma_db = 10.0;
  FadingModel fading = FadingModel::none;
  std::uint64_t seed = 1;
  double ue_weight = 1.0;
  // Optional per-UE override; empty means uniform ue_weight.
  std::vector<double> ue_weights;

  int num_macro_enbs() const { return num_macro_sites * sectors_per_macro; }
  int num_picos() const { return num_macro_sites * sectors_per_macro * picos_per_sector; }
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double rb_bandwidth_hz(const NetworkConfig& c) { return c.bandwidth_hz / c.num_rbs; }

inline double noise_per_rb_watts(const NetworkConfig& c) {
  return dbm_to_watts(c.noise_psd_dbm_hz) * rb_bandwidth_hz(c);
}

// Throws ConfigError describing every violated invariant.
void validate(const NetworkConfig& config);

// Parses the key = value scenario file format; unknown keys and malformed
// values are reported with file:line positions.  The parsed config is
// validated before it is returned.
NetworkConfig parse_config_file(const std::string& path);
NetworkConfig parse_config_text(const std::string& text, const std::string& origin);

std::string fading_model_name(FadingModel model);

}  // namespace hetopt
