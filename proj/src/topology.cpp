#include "hetopt/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hetopt/errors.hpp"
#include "hetopt/rng.hpp"

namespace hetopt {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Stream tags for the per-entity RNG hierarchy.
enum StreamTag : std::uint64_t { kPicoTag = 1, kUeTag = 2 };

struct Point {
  double x, y;
};

// Hexagonal spiral around the origin: center site, then rings of 6*r sites
// at inter-site distance spacing.
std::vector<Point> hex_sites(int count, double isd) {
  std::vector<Point> sites;
  sites.push_back({0.0, 0.0});
  // Axial-coordinate unit steps for the six hex directions.
  static const int dq[6] = {1, 0, -1, -1, 0, 1};
  static const int dr[6] = {-1, -1, 0, 1, 1, 0};
  for (int ring = 1; static_cast<int>(sites.size()) < count; ++ring) {
    int q = 0, r = ring;  // start at the "south" corner of the ring
    for (int side = 0; side < 6 && static_cast<int>(sites.size()) < count; ++side) {
      for (int step = 0; step < ring && static_cast<int>(sites.size()) < count; ++step) {
        const double x = isd * (q + 0.5 * r);
        const double y = isd * (std::sqrt(3.0) / 2.0 * r);
        sites.push_back({x, y});
        q += dq[side];
        r += dr[side];
      }
    }
  }
  sites.resize(count);
  return sites;
}

double nearest_site_distance(const std::vector<Point>& sites, double x, double y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : sites) best = std::min(best, distance(s.x, s.y, x, y));
  return best;
}

}  // namespace

double distance(double ax, double ay, double bx, double by) {
  return std::hypot(ax - bx, ay - by);
}

Topology generate_layout(const NetworkConfig& config) {
  validate(config);
  Topology topo;
  const rng::Stream root(config.seed);
  const auto sites = hex_sites(config.num_macro_sites, config.inter_site_distance);
  // Hex cell circumradius; pico and UE placement stay within this range of a site.
  const double cell_radius = config.inter_site_distance / std::sqrt(3.0);
  const double sector_width = kTau / config.sectors_per_macro;
  const double macro_rb_w = dbm_to_watts(config.macro_power_dbm) / config.num_rbs;
  const double pico_rb_w = dbm_to_watts(config.pico_power_dbm) / config.num_rbs;

  int next_id = 0;
  for (int s = 0; s < config.num_macro_sites; ++s) {
    for (int j = 0; j < config.sectors_per_macro; ++j) {
      Enb enb;
      enb.id = next_id++;
      enb.tier = Tier::macro;
      enb.x = sites[s].x;
      enb.y = sites[s].y;
      enb.sector_bearing = sector_width * j;
      enb.per_rb_power_w = macro_rb_w;
      topo.enbs.push_back(enb);
    }
  }
  topo.num_macro_enbs = next_id;

  const rng::Stream pico_streams = root.child(kPicoTag);
  int pico_index = 0;
  for (int s = 0; s < config.num_macro_sites; ++s) {
    for (int j = 0; j < config.sectors_per_macro; ++j) {
      const double bearing = sector_width * j;
      for (int p = 0; p < config.picos_per_sector; ++p, ++pico_index) {
        const rng::Stream stream = pico_streams.child(pico_index);
        bool placed = false;
        constexpr int kMaxAttempts = 5000;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
          const double radius = cell_radius * std::sqrt(stream.uniform01(2 * attempt));
          const double angle =
              bearing + (stream.uniform01(2 * attempt + 1) - 0.5) * sector_width;
          const double x = sites[s].x + radius * std::cos(angle);
          const double y = sites[s].y + radius * std::sin(angle);
          bool ok = true;
          for (const auto& site : sites)
            if (distance(site.x, site.y, x, y) < kMinPicoMacroDistance) ok = false;
          for (int k = topo.num_macro_enbs; k < static_cast<int>(topo.enbs.size()); ++k)
            if (distance(topo.enbs[k].x, topo.enbs[k].y, x, y) < 2.0 * config.hotspot_radius)
              ok = false;
          if (!ok) continue;
          Enb enb;
          enb.id = next_id++;
          enb.tier = Tier::pico;
          enb.x = x;
          enb.y = y;
          enb.per_rb_power_w = pico_rb_w;
          topo.enbs.push_back(enb);
          placed = true;
          break;
        }
        if (!placed)
          throw ConfigError(
              "pico placement failed after " + std::to_string(kMaxAttempts) +
              " attempts (sector " + std::to_string(s * config.sectors_per_macro + j) +
              "); the separation constraints are infeasible for this geometry");
      }
    }
  }
  topo.num_picos = pico_index;

  const int hotspot_ues =
      static_cast<int>(std::llround(config.hotspot_ue_fraction * config.num_ues));
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const auto& site : sites) {
    min_x = std::min(min_x, site.x - cell_radius);
    max_x = std::max(max_x, site.x + cell_radius);
    min_y = std::min(min_y, site.y - cell_radius);
    max_y = std::max(max_y, site.y + cell_radius);
  }

  const rng::Stream ue_streams = root.child(kUeTag);
  for (int u = 0; u < config.num_ues; ++u) {
    const rng::Stream stream = ue_streams.child(u);
    Ue ue;
    ue.id = u;
    ue.weight = config.ue_weights.empty() ? config.ue_weight : config.ue_weights[u];
    if (u < hotspot_ues) {
      const Enb& pico = topo.pico(u % topo.num_picos);
      const double radius = config.hotspot_radius * std::sqrt(stream.uniform01(0));
      const double angle = kTau * stream.uniform01(1);
      ue.x = pico.x + radius * std::cos(angle);
      ue.y = pico.y + radius * std::sin(angle);
    } else {
      bool placed = false;
      constexpr int kMaxAttempts = 100000;
      for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const double x = stream.uniform(2 * attempt, min_x, max_x);
        const double y = stream.uniform(2 * attempt + 1, min_y, max_y);
        if (nearest_site_distance(sites, x, y) > cell_radius) continue;
        ue.x = x;
        ue.y = y;
        placed = true;
        break;
      }
      if (!placed)
        throw ConfigError("UE placement failed; macro coverage area is degenerate");
    }
    topo.ues.push_back(ue);
  }
  return topo;
}

}  // namespace hetopt
