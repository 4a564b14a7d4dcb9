#include "hetopt/radio.hpp"

#include <cmath>

#include "hetopt/parallel.hpp"

namespace hetopt {

LogicalEnbIndex LogicalEnbIndex::build(const Topology& topology) {
  LogicalEnbIndex index;
  index.num_macro = topology.num_macro_enbs;
  index.num_pico = topology.num_picos;
  int next = 0;
  for (int b = 0; b < topology.num_macro_enbs; ++b)
    index.entries.push_back({next++, LogicalKind::macro, b});
  for (int p = 0; p < topology.num_picos; ++p) {
    const int phys = topology.num_macro_enbs + p;
    index.entries.push_back({next++, LogicalKind::pico_cen, phys});
    index.entries.push_back({next++, LogicalKind::pico_cre, phys});
  }
  return index;
}

std::vector<LogicalKind> LogicalEnbIndex::kinds() const {
  std::vector<LogicalKind> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.kind);
  return out;
}

double sinr(const GainTensor& gains, const Topology& topology, int ue,
            const LogicalEnb& serving, int rb, Phase phase, double noise_per_rb_w) {
  const int b = serving.physical_enb_id;
  const double signal = topology.enbs[b].per_rb_power_w * gains.g(ue, b, rb);
  double interference = noise_per_rb_w;
  for (int k = 0; k < topology.num_enbs(); ++k) {
    if (k == b) continue;
    if (phase == Phase::abs && topology.enbs[k].tier == Tier::macro) continue;
    interference += topology.enbs[k].per_rb_power_w * gains.g(ue, k, rb);
  }
  return signal / interference;
}

RateTable build_rate_table(const GainTensor& gains, const Topology& topology,
                           const LogicalEnbIndex& index, double noise_per_rb_w,
                           int threads) {
  const int num_ues = topology.num_ues();
  const int num_logical = index.size();
  const int num_rbs = gains.g.dim2();
  RateTable table;
  table.num_rbs = num_rbs;
  table.rate_nabs = Array3(num_ues, num_logical, num_rbs);
  table.rate_abs = Array3(num_ues, num_logical, num_rbs);
  table.avg_nabs = Eigen::MatrixXd::Zero(num_ues, num_logical);
  table.avg_abs = Eigen::MatrixXd::Zero(num_ues, num_logical);

  parallel_for(num_ues, threads, [&](int u) {
    for (int l = 0; l < num_logical; ++l) {
      const LogicalEnb& enb = index[l];
      const Phase phase = active_phase(enb.kind);
      Array3& active = phase == Phase::abs ? table.rate_abs : table.rate_nabs;
      double sum = 0.0;
      for (int r = 0; r < num_rbs; ++r) {
        const double value =
            std::log2(1.0 + sinr(gains, topology, u, enb, r, phase, noise_per_rb_w));
        active(u, l, r) = value;
        sum += value;
      }
      const double avg = sum / num_rbs;
      if (phase == Phase::abs)
        table.avg_abs(u, l) = avg;
      else
        table.avg_nabs(u, l) = avg;
    }
  });
  return table;
}

Eligibility classify_cen_cre(const Eigen::MatrixXd& rsrp, const Topology& topology,
                             const LogicalEnbIndex& index) {
  const int num_ues = static_cast<int>(rsrp.rows());
  Eligibility eligibility(num_ues, index.size());
  for (int u = 0; u < num_ues; ++u) {
    double max_macro = 0.0;
    for (int b = 0; b < topology.num_macro_enbs; ++b)
      max_macro = std::max(max_macro, rsrp(u, b));
    for (int l = 0; l < index.size(); ++l) {
      const LogicalEnb& enb = index[l];
      switch (enb.kind) {
        case LogicalKind::macro:
          eligibility.set(u, l, true);
          break;
        case LogicalKind::pico_cen:
          eligibility.set(u, l, rsrp(u, enb.physical_enb_id) >= max_macro);
          break;
        case LogicalKind::pico_cre:
          eligibility.set(u, l, rsrp(u, enb.physical_enb_id) < max_macro);
          break;
      }
    }
  }
  return eligibility;
}

}  // namespace hetopt
