#include "hetopt/scenario.hpp"

namespace hetopt {

Scenario build_scenario(const NetworkConfig& config, int threads) {
  Scenario scenario;
  scenario.config = config;
  scenario.topology = generate_layout(config);
  scenario.index = LogicalEnbIndex::build(scenario.topology);
  ChannelRealization channel = build_channel(scenario.topology, config, threads);
  scenario.gains = std::move(channel.gains);
  scenario.rsrp = std::move(channel.rsrp);
  scenario.eligibility = classify_cen_cre(scenario.rsrp, scenario.topology, scenario.index);
  scenario.noise_rb_w = noise_per_rb_watts(config);
  scenario.rb_bandwidth = rb_bandwidth_hz(config);
  scenario.rates = build_rate_table(scenario.gains, scenario.topology, scenario.index,
                                    scenario.noise_rb_w, threads);
  scenario.weights = Eigen::VectorXd::Zero(scenario.topology.num_ues());
  for (int u = 0; u < scenario.topology.num_ues(); ++u)
    scenario.weights[u] = scenario.topology.ues[u].weight;
  return scenario;
}

}  // namespace hetopt
