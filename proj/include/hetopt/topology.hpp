#pragma once

#include <vector>

#include "hetopt/config.hpp"

namespace hetopt {

enum class Tier { macro, pico };

struct Enb {
  int id = 0;
  Tier tier = Tier::macro;
  double x = 0.0;
  double y = 0.0;
  double sector_bearing = 0.0;  // radians; meaningful for macros only
  double per_rb_power_w = 0.0;
};

struct Ue {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double weight = 1.0;
};

// Physical layout: macro sector eNBs first (site-major, sector-minor order),
// then picos.  Immutable after generation.
struct Topology {
  std::vector<Enb> enbs;
  std::vector<Ue> ues;
  int num_macro_enbs = 0;
  int num_picos = 0;

  const Enb& pico(int pico_index) const { return enbs[num_macro_enbs + pico_index]; }
  int num_enbs() const { return static_cast<int>(enbs.size()); }
  int num_ues() const { return static_cast<int>(ues.size()); }
};

// Minimum geometry used by the generator: UE-eNB distances are clamped below
// at kMinUeDistance in the propagation model; picos keep kMinPicoMacroDistance
// from macro sites and 2*hotspot_radius from each other.
inline constexpr double kMinUeDistance = 10.0;
inline constexpr double kMinPicoMacroDistance = 75.0;

double distance(double ax, double ay, double bx, double by);

// Deterministic for a given (config, seed): macros on a hexagonal grid,
// picos rejection-sampled inside each sector wedge, hotspot UEs in discs
// around the picos (round-robin across picos) and the rest uniform over the
// macro coverage area.
Topology generate_layout(const NetworkConfig& config);

}  // namespace hetopt
