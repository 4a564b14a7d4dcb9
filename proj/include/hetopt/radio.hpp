#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "hetopt/channel.hpp"
#include "hetopt/tensor.hpp"
#include "hetopt/topology.hpp"

namespace hetopt {

enum class LogicalKind { macro, pico_cen, pico_cre };
enum class Phase { nabs, abs };

// Phase in which a logical eNB is allowed to transmit: macros and pico
// cell-center sub-eNBs use nABS subframes, pico range-extension sub-eNBs
// use ABS subframes.
inline Phase active_phase(LogicalKind kind) {
  return kind == LogicalKind::pico_cre ? Phase::abs : Phase::nabs;
}

struct LogicalEnb {
  int logical_id = 0;
  LogicalKind kind = LogicalKind::macro;
  int physical_enb_id = 0;
};

// Every macro maps to one logical eNB; every pico splits into a CEN and a
// CRE sub-eNB.  Order: macros, then per pico (cen, cre).
struct LogicalEnbIndex {
  std::vector<LogicalEnb> entries;
  int num_macro = 0;
  int num_pico = 0;

  static LogicalEnbIndex build(const Topology& topology);

  int size() const { return static_cast<int>(entries.size()); }
  const LogicalEnb& operator[](int logical_id) const { return entries[logical_id]; }
  int cen_of(int pico_index) const { return num_macro + 2 * pico_index; }
  int cre_of(int pico_index) const { return num_macro + 2 * pico_index + 1; }
  std::vector<LogicalKind> kinds() const;
};

// Achievable spectral efficiencies (bits/s/Hz) per (ue, logical eNB, rb) for
// both interference phases; the phase a logical eNB cannot use is zero.
struct RateTable {
  Array3 rate_nabs;
  Array3 rate_abs;
  Eigen::MatrixXd avg_nabs;  // RB means, (ue, logical eNB)
  Eigen::MatrixXd avg_abs;
  int num_rbs = 0;
};

// Raw physics of one link in one phase; no phase-zeroing is applied here.
// nABS: every other physical eNB interferes.  ABS: macros are silent, only
// other picos interfere.
double sinr(const GainTensor& gains, const Topology& topology, int ue,
            const LogicalEnb& serving, int rb, Phase phase, double noise_per_rb_w);

RateTable build_rate_table(const GainTensor& gains, const Topology& topology,
                           const LogicalEnbIndex& index, double noise_per_rb_w,
                           int threads = 1);

// Candidate logical eNBs per UE: every macro, and per pico exactly one of its
// two sub-eNBs (CEN when the pico's RSRP dominates every macro, CRE
// otherwise; ties go to CEN).
class Eligibility {
 public:
  Eligibility() = default;
  Eligibility(int num_ues, int num_logical, bool value = false)
      : num_ues_(num_ues), num_logical_(num_logical),
        mask_(static_cast<std::size_t>(num_ues) * num_logical, value ? 1 : 0) {}

  bool ok(int ue, int logical) const {
    return mask_[static_cast<std::size_t>(ue) * num_logical_ + logical] != 0;
  }
  void set(int ue, int logical, bool value) {
    mask_[static_cast<std::size_t>(ue) * num_logical_ + logical] = value ? 1 : 0;
  }
  int num_ues() const { return num_ues_; }
  int num_logical() const { return num_logical_; }

 private:
  int num_ues_ = 0;
  int num_logical_ = 0;
  std::vector<std::uint8_t> mask_;
};

Eligibility classify_cen_cre(const Eigen::MatrixXd& rsrp, const Topology& topology,
                             const LogicalEnbIndex& index);

}  // namespace hetopt
