#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "hetopt/association.hpp"
#include "hetopt/scenario.hpp"
#include "hetopt/schedule.hpp"

namespace hetopt {

// Beta is kept this far from {0,1} whenever the starved phase still has
// attached UEs, so no associated UE ends up with zero airtime.
inline constexpr double kBetaEpsilon = 1e-6;

struct TracePoint {
  int iteration = 0;
  double utility = 0.0;
  int handovers = 0;
  double beta = 0.0;
};

struct Solution {
  Association association;
  double beta = 0.0;
  Allocation allocation;
  double utility = 0.0;
  bool converged = false;
  std::vector<TracePoint> trace;
  std::optional<double> upper_bound;  // relaxed objective, when computed
  std::vector<int> starved_ues;       // UEs with zero aggregate rate (baselines only)
};

// Exact joint utility: sum over associated pairs of
// S_ub * w_u * ln(sum_r (rate_nabs * x + rate_abs * y)).  Terms with
// S_ub = 0 contribute zero; an associated UE with zero aggregate rate is an
// InfeasibleError.
double objective(const Association& association, const Allocation& allocation,
                 const RateTable& rates, const Eigen::VectorXd& weights);

// Optimal ABS fraction for a binary association: the attached-weight share of
// the pico-CRE sub-eNBs, clamped to [kBetaEpsilon, 1-kBetaEpsilon] when both
// phase classes are nonempty.
double optimal_abs(const std::vector<int>& serving, const Eigen::VectorXd& weights,
                   const std::vector<LogicalKind>& kinds);

// ----- small-instance machinery (oracles and tests) ------------------------

// A self-contained flat-rate association instance.
struct FlatInstance {
  Eigen::MatrixXd avg_nabs;  // (ue, logical eNB) spectral efficiencies
  Eigen::MatrixXd avg_abs;
  Eigen::VectorXd weights;
  Eligibility eligibility;
  std::vector<LogicalKind> kinds;
  int num_rbs = 1;
};

FlatInstance flat_instance(const Scenario& scenario);

// Reduced utility of (serving, beta) under closed-form shares:
// sum_u w_u ln(n w_u [avg_nabs (1-beta) + avg_abs beta] / Omega_serving).
double reduced_objective(const FlatInstance& instance, const std::vector<int>& serving,
                         double beta);

struct EnumerationResult {
  std::vector<int> serving;
  double beta = 0.0;
  double utility = 0.0;
};

// Exhaustive search over eligible binary associations; beta per candidate is
// the closed-form optimum unless fixed_beta is given.  Refuses instances with
// more than 1e6 assignments.
EnumerationResult enumerate_optimum(const FlatInstance& instance,
                                    std::optional<double> fixed_beta = std::nullopt);

// ----- joint solver ---------------------------------------------------------

enum class AssociationSolver { heuristic, relaxed_rounded };
enum class ScheduleSolver { closed_form, pf_numeric };

struct SolverOptions {
  int max_iters = 50;
  double utility_tol = 1e-8;  // relative utility change per full cycle
  AssociationSolver association = AssociationSolver::heuristic;
  ScheduleSolver schedule = ScheduleSolver::closed_form;
  int threads = 1;
  double relaxed_tol = 1e-6;
  PfOptions pf;
};

// Alternating optimization of (association, beta, shares) from the max-RSRP
// association.  Stops at a joint fixed point (no handovers and stable beta),
// on a utility plateau, or at max_iters; the best iterate is returned when
// the loop did not converge.
Solution bcd_solve(const Scenario& scenario, const SolverOptions& options = {});

// Invariant checks; throw std::runtime_error with a description on violation.
void validate_association(const Association& association, const Eligibility& eligibility);
void validate_solution(const Solution& solution, const Scenario& scenario,
                       double budget_tol = 1e-9);

}  // namespace hetopt
