#include "hetopt/channel.hpp"

#include <cmath>

#include "hetopt/parallel.hpp"
#include "hetopt/rng.hpp"

namespace hetopt {

namespace {

enum StreamTag : std::uint64_t { kShadowTag = 3, kFadingTag = 4 };

}  // namespace

double path_loss_db(double distance_m, Tier tier) {
  const double d_km = std::max(distance_m, kMinUeDistance) / 1000.0;
  if (tier == Tier::macro) return 128.1 + 37.6 * std::log10(d_km);
  return 140.7 + 36.7 * std::log10(d_km);
}

ChannelRealization build_channel(const Topology& topology, const NetworkConfig& config,
                                 int threads) {
  const int num_ues = topology.num_ues();
  const int num_enbs = topology.num_enbs();
  ChannelRealization channel;
  channel.gains.g = Array3(num_ues, num_enbs, config.num_rbs);
  channel.rsrp = Eigen::MatrixXd::Zero(num_ues, num_enbs);

  const rng::Stream root(config.seed);
  const rng::Stream shadow = root.child(kShadowTag);
  const rng::Stream fading = root.child(kFadingTag);

  parallel_for(num_ues, threads, [&](int u) {
    const Ue& ue = topology.ues[u];
    const rng::Stream shadow_u = shadow.child(u);
    const rng::Stream fading_u = fading.child(u);
    for (int b = 0; b < num_enbs; ++b) {
      const Enb& enb = topology.enbs[b];
      const double pl = path_loss_db(distance(ue.x, ue.y, enb.x, enb.y), enb.tier);
      const double shadow_db =
          config.shadowing_sigma_db > 0 ? config.shadowing_sigma_db * shadow_u.child(b).normal(0)
                                        : 0.0;
      const double flat = std::pow(10.0, -(pl + shadow_db) / 10.0);
      channel.rsrp(u, b) = enb.per_rb_power_w * flat;
      auto row = channel.gains.g.row(u, b);
      if (config.fading == FadingModel::none) {
        for (int r = 0; r < config.num_rbs; ++r) row[r] = flat;
      } else {
        const rng::Stream link = fading_u.child(b);
        for (int r = 0; r < config.num_rbs; ++r) row[r] = flat * link.exponential(r);
      }
    }
  });
  return channel;
}

}  // namespace hetopt
