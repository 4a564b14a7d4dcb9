#include "hetopt/baselines.hpp"

#include <cmath>
#include <limits>

#include "hetopt/errors.hpp"

namespace hetopt {

namespace {

std::vector<int> rsrp_serving(const Eigen::MatrixXd& rsrp, const Topology& topology,
                              const LogicalEnbIndex& index, const Eligibility& eligibility,
                              double pico_bias_linear) {
  const int num_ues = static_cast<int>(rsrp.rows());
  std::vector<int> serving(num_ues);
  for (int u = 0; u < num_ues; ++u) {
    int best = 0;
    double best_score = -1.0;
    for (int b = 0; b < topology.num_enbs(); ++b) {
      const double score = topology.enbs[b].tier == Tier::pico
                               ? rsrp(u, b) * pico_bias_linear
                               : rsrp(u, b);
      if (score > best_score) {
        best_score = score;
        best = b;
      }
    }
    if (topology.enbs[best].tier == Tier::macro) {
      serving[u] = best;  // logical id == physical id for macros
    } else {
      const int pico_index = best - topology.num_macro_enbs;
      const int cen = index.cen_of(pico_index);
      serving[u] = eligibility.ok(u, cen) ? cen : index.cre_of(pico_index);
    }
  }
  return serving;
}

}  // namespace

std::vector<int> max_rsrp_serving(const Eigen::MatrixXd& rsrp, const Topology& topology,
                                  const LogicalEnbIndex& index,
                                  const Eligibility& eligibility) {
  return rsrp_serving(rsrp, topology, index, eligibility, 1.0);
}

std::vector<int> biased_rsrp_serving(const Eigen::MatrixXd& rsrp, const Topology& topology,
                                     const LogicalEnbIndex& index,
                                     const Eligibility& eligibility, double bias_db) {
  if (bias_db < 0.0) throw ConfigError("biased_rsrp bias_db must be >= 0");
  return rsrp_serving(rsrp, topology, index, eligibility, std::pow(10.0, bias_db / 10.0));
}

Solution run_baseline(const Scenario& scenario, const BaselineSpec& spec, int threads) {
  if (spec.beta < 0.0 || spec.beta > 1.0) throw ConfigError("baseline beta must be in [0,1]");

  std::vector<int> serving =
      spec.association == BaselineAssociationRule::max_rsrp
          ? max_rsrp_serving(scenario.rsrp, scenario.topology, scenario.index,
                             scenario.eligibility)
          : biased_rsrp_serving(scenario.rsrp, scenario.topology, scenario.index,
                                scenario.eligibility, spec.bias_db);

  Solution solution;
  solution.association = Association::from_serving(serving, scenario.index.size());
  solution.beta = spec.beta;
  solution.allocation = build_allocation(
      serving, spec.beta, scenario.rates, scenario.weights, scenario.index,
      spec.scheduler == BaselineScheduler::round_robin ? SchedulePolicy::round_robin
                                                       : SchedulePolicy::pf_numeric,
      threads);

  // A fixed beta can strand UEs in a phase with zero airtime; keep them
  // visible instead of reassigning.
  for (int u = 0; u < scenario.topology.num_ues(); ++u) {
    const int b = serving[u];
    double aggregate = 0.0;
    for (int r = 0; r < scenario.rates.num_rbs; ++r)
      aggregate += scenario.rates.rate_nabs(u, b, r) * solution.allocation.x(u, b, r) +
                   scenario.rates.rate_abs(u, b, r) * solution.allocation.y(u, b, r);
    if (aggregate <= 0.0) solution.starved_ues.push_back(u);
  }
  solution.utility = solution.starved_ues.empty()
                         ? objective(solution.association, solution.allocation,
                                     scenario.rates, scenario.weights)
                         : -std::numeric_limits<double>::infinity();
  solution.converged = true;
  solution.trace.push_back({0, solution.utility, 0, solution.beta});
  return solution;
}

}  // namespace hetopt
