#pragma once

#include <Eigen/Core>
#include <vector>

#include "hetopt/radio.hpp"

namespace hetopt {

enum class AssociationMode { binary, relaxed };

// UE-to-logical-eNB assignment matrix; rows sum to one.  Binary rows have a
// single unit entry, relaxed rows are arbitrary points of the simplex
// restricted to eligible (ue, eNB) pairs.
struct Association {
  Eigen::MatrixXd s;
  AssociationMode mode = AssociationMode::binary;

  static Association from_serving(const std::vector<int>& serving, int num_logical);
  // Serving logical eNB per UE; binary mode only.
  std::vector<int> serving() const;
};

// Combined long-term rate per (ue, logical eNB) at a given ABS fraction:
// n * [avg_nabs * (1-beta) + avg_abs * beta].
Eigen::MatrixXd effective_rates(const RateTable& rates, double beta);

// Value of the relaxed association objective at S: the sum over associated
// pairs of S_ub * w_u * log(w_u R_ub / Omega_b) with Omega_b the attached
// weight of eNB b.  Terms with S_ub = 0 contribute exactly zero.
double relaxed_objective(const Eigen::MatrixXd& s, const Eigen::MatrixXd& rates_ub,
                         const Eigen::VectorXd& weights);

// Marginal association utility w_u * (log(R_ub / Omega_b) - 1) for eligible
// pairs; -inf for ineligible or zero-rate pairs.  Omega is floored at
// kOmegaFloor so the marginal of an empty eNB is defined (and large).
inline constexpr double kOmegaFloor = 1e-12;
Eigen::MatrixXd association_gradient(const Eigen::MatrixXd& s,
                                     const Eigen::MatrixXd& rates_ub,
                                     const Eigen::VectorXd& weights,
                                     const Eligibility& eligibility);

struct RelaxedOptions {
  double tol = 1e-6;     // stationarity (Frank-Wolfe gap) target
  int max_iters = 10000;
};

struct RelaxedResult {
  Eigen::MatrixXd s;
  double objective = 0.0;
  double gap = 0.0;  // achieved stationarity residual
  int iters = 0;
};

// Projected gradient ascent on the concave relaxed association problem over
// row-wise simplices restricted to eligible positive-rate pairs.  The
// attained objective upper-bounds every binary association at the same beta.
RelaxedResult relaxed_association(const Eigen::MatrixXd& rates_ub,
                                  const Eigen::VectorXd& weights,
                                  const Eligibility& eligibility,
                                  const RelaxedOptions& options = {});

struct HeuristicStep {
  std::vector<int> serving;
  int handovers = 0;
};

// One synchronous broadcast-and-decide round: every UE picks the eNB with the
// best marginal utility using loads frozen at the start of the step.  Ties
// keep the current server, then the lowest logical id.  Empty candidate eNBs
// are scored with the mover's own weight as load (the utility of being served
// alone there), which keeps the marginal finite.
HeuristicStep heuristic_association_step(const std::vector<int>& serving,
                                         const Eigen::MatrixXd& rates_ub,
                                         const Eigen::VectorXd& weights,
                                         const Eligibility& eligibility);

// Exact objective value of a binary association under rates_ub (the relaxed
// objective restricted to indicator rows).  -inf if some UE has no rate.
double binary_association_objective(const std::vector<int>& serving,
                                    const Eigen::MatrixXd& rates_ub,
                                    const Eigen::VectorXd& weights);

// Applies single best-improvement moves until no move improves the exact
// objective; returns the number of moves.  Terminates because every applied
// move strictly increases the objective over a finite state space.
int greedy_improvement_pass(std::vector<int>& serving, const Eigen::MatrixXd& rates_ub,
                            const Eigen::VectorXd& weights, const Eligibility& eligibility,
                            int max_moves = -1);

// Association block driver for the alternating solver.  Runs synchronous
// rounds while they make progress; once a cycle or an objective regression is
// detected it switches (and stays) in exact best-improvement mode, which
// cannot oscillate.
class AssociationDriver {
 public:
  int advance(std::vector<int>& serving, const Eigen::MatrixXd& rates_ub,
              const Eigen::VectorXd& weights, const Eligibility& eligibility);
  bool greedy() const { return greedy_; }

 private:
  std::vector<std::vector<int>> history_;
  bool greedy_ = false;
};

struct FixedPointResult {
  std::vector<int> serving;
  int steps = 0;
  bool fixed = false;
};

// Iterates association block steps at fixed rates until no UE moves.
FixedPointResult heuristic_fixed_point(std::vector<int> serving,
                                       const Eigen::MatrixXd& rates_ub,
                                       const Eigen::VectorXd& weights,
                                       const Eligibility& eligibility, int max_steps = 200);

}  // namespace hetopt
