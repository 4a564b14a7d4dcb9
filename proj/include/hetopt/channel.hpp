#pragma once

#include <Eigen/Core>

#include "hetopt/config.hpp"
#include "hetopt/tensor.hpp"
#include "hetopt/topology.hpp"

namespace hetopt {

// Linear power gains indexed (ue, physical eNB, rb), strictly positive.
struct GainTensor {
  Array3 g;
};

// Gains plus the long-term received powers used for association decisions.
// RSRP excludes fast fading by construction (per-RB transmit power times the
// RB-mean gain with fading stripped), matching its long-term semantics.
struct ChannelRealization {
  GainTensor gains;
  Eigen::MatrixXd rsrp;  // (ue, physical eNB), watts
};

// 3GPP urban path loss; distance is clamped below at kMinUeDistance.
// macro: 128.1 + 37.6 log10(d_km), pico: 140.7 + 36.7 log10(d_km).
double path_loss_db(double distance_m, Tier tier);

ChannelRealization build_channel(const Topology& topology, const NetworkConfig& config,
                                 int threads = 1);

inline GainTensor build_gain_tensor(const Topology& topology, const NetworkConfig& config,
                                    int threads = 1) {
  return build_channel(topology, config, threads).gains;
}

}  // namespace hetopt
