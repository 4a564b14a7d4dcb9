#pragma once

#include <Eigen/Core>

#include "hetopt/channel.hpp"
#include "hetopt/config.hpp"
#include "hetopt/radio.hpp"
#include "hetopt/topology.hpp"

namespace hetopt {

// Everything derived deterministically from a (config, seed) pair; immutable
// once built and safe to share across threads.
struct Scenario {
  NetworkConfig config;
  Topology topology;
  LogicalEnbIndex index;
  GainTensor gains;
  Eigen::MatrixXd rsrp;
  Eligibility eligibility;
  RateTable rates;
  Eigen::VectorXd weights;
  double noise_rb_w = 0.0;
  double rb_bandwidth = 0.0;
};

Scenario build_scenario(const NetworkConfig& config, int threads = 1);

}  // namespace hetopt
