#pragma once

#include <Eigen/Core>
#include <vector>

#include "hetopt/scenario.hpp"
#include "hetopt/solver.hpp"

namespace hetopt {

enum class BaselineAssociationRule { max_rsrp, biased_rsrp };
enum class BaselineScheduler { round_robin, pf };

// A fixed reference scheme: association rule, fixed ABS fraction, scheduler.
struct BaselineSpec {
  BaselineAssociationRule association = BaselineAssociationRule::max_rsrp;
  double bias_db = 0.0;
  double beta = 0.0;
  BaselineScheduler scheduler = BaselineScheduler::pf;
};

// Strongest-RSRP association.  Pico winners land on the pico's CEN sub-eNB
// (unbiased dominance implies CEN eligibility); ties go to the lowest
// physical eNB id.
std::vector<int> max_rsrp_serving(const Eigen::MatrixXd& rsrp, const Topology& topology,
                                  const LogicalEnbIndex& index,
                                  const Eligibility& eligibility);

// As max_rsrp_serving but with pico RSRPs raised by bias_db before the
// argmax; UEs captured only through the bias land on CRE sub-eNBs.
std::vector<int> biased_rsrp_serving(const Eigen::MatrixXd& rsrp, const Topology& topology,
                                     const LogicalEnbIndex& index,
                                     const Eligibility& eligibility, double bias_db);

// Full Solution for the fixed scheme.  UEs left with zero aggregate rate
// (e.g. CRE attachments at beta = 0) are reported in starved_ues and the
// utility is -inf; they are never silently reassigned.
Solution run_baseline(const Scenario& scenario, const BaselineSpec& spec, int threads = 1);

}  // namespace hetopt
