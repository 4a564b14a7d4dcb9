#pragma once

#include <Eigen/Core>
#include <vector>

#include "hetopt/association.hpp"
#include "hetopt/radio.hpp"
#include "hetopt/tensor.hpp"

namespace hetopt {

// Fractional RB shares per (ue, logical eNB, rb); x covers nABS subframes,
// y covers ABS subframes.  For every nonempty eNB and RB the x column sums
// to 1-beta and the y column to beta.
struct Allocation {
  Array3 x;
  Array3 y;
};

struct PfOptions {
  double tol = 1e-8;     // Frank-Wolfe stationarity target (<= the 1e-6 contract)
  int max_iters = 200000;
  bool force_numeric = false;
  // Per-UE rates whose relative spread across RBs stays below this are
  // treated as flat and solved in closed form.
  double flat_spread = 1e-9;
};

// Weighted proportional-fair shares for one eNB: maximizes
// sum_u w_u log(sum_r rate(u,r) * share(u,r)) subject to per-RB share sums
// equal to phase_budget and shares >= 0.  Flat-rate instances use the exact
// closed form share = w_u * budget / sum w; otherwise projected gradient
// ascent over the scaled per-RB simplices.
// rates is (attached UEs x RBs); throws InfeasibleError for a UE with no
// positive rate on any RB.
Eigen::MatrixXd pf_schedule(const Eigen::MatrixXd& rates, const Eigen::VectorXd& weights,
                            double phase_budget, const PfOptions& options = {});

// Weight- and channel-blind equal split.
Eigen::MatrixXd round_robin_shares(int num_ues, int num_rbs, double phase_budget);

enum class SchedulePolicy { closed_form, pf_numeric, round_robin };

// Builds the full (x, y) allocation for a binary association: both phases of
// every nonempty eNB carry the weighted closed-form shares, and the active
// phase is replaced by the numeric PF or round-robin shares when requested.
Allocation build_allocation(const std::vector<int>& serving, double beta,
                            const RateTable& rates, const Eigen::VectorXd& weights,
                            const LogicalEnbIndex& index, SchedulePolicy policy,
                            int threads = 1, const PfOptions& pf = {});

// Closed-form allocation for a binary association (Proposition-2 shares on
// both phases).
Allocation closed_form_allocation(const std::vector<int>& serving, double beta,
                                  const Eigen::VectorXd& weights,
                                  const LogicalEnbIndex& index, int num_rbs);

}  // namespace hetopt
