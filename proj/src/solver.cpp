#include "hetopt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hetopt/baselines.hpp"
#include "hetopt/errors.hpp"

namespace hetopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double clamp_beta(double beta) {
  return std::clamp(beta, kBetaEpsilon, 1.0 - kBetaEpsilon);
}

}  // namespace

double objective(const Association& association, const Allocation& allocation,
                 const RateTable& rates, const Eigen::VectorXd& weights) {
  double total = 0.0;
  for (int u = 0; u < association.s.rows(); ++u) {
    for (int b = 0; b < association.s.cols(); ++b) {
      const double s = association.s(u, b);
      if (s <= 0.0) continue;
      double aggregate = 0.0;
      for (int r = 0; r < rates.num_rbs; ++r)
        aggregate += rates.rate_nabs(u, b, r) * allocation.x(u, b, r) +
                     rates.rate_abs(u, b, r) * allocation.y(u, b, r);
      if (aggregate <= 0.0)
        throw InfeasibleError("UE " + std::to_string(u) +
                              " is associated with eNB " + std::to_string(b) +
                              " but has zero aggregate rate");
      total += s * weights[u] * std::log(aggregate);
    }
  }
  return total;
}

double optimal_abs(const std::vector<int>& serving, const Eigen::VectorXd& weights,
                   const std::vector<LogicalKind>& kinds) {
  double cre_weight = 0.0;
  double total_weight = 0.0;
  for (int u = 0; u < static_cast<int>(serving.size()); ++u) {
    total_weight += weights[u];
    if (kinds[serving[u]] == LogicalKind::pico_cre) cre_weight += weights[u];
  }
  const double beta = cre_weight / total_weight;
  if (cre_weight > 0.0 && cre_weight < total_weight) return clamp_beta(beta);
  return beta;
}

FlatInstance flat_instance(const Scenario& scenario) {
  FlatInstance instance;
  instance.avg_nabs = scenario.rates.avg_nabs;
  instance.avg_abs = scenario.rates.avg_abs;
  instance.weights = scenario.weights;
  instance.eligibility = scenario.eligibility;
  instance.kinds = scenario.index.kinds();
  instance.num_rbs = scenario.rates.num_rbs;
  return instance;
}

double reduced_objective(const FlatInstance& instance, const std::vector<int>& serving,
                         double beta) {
  const int num_logical = static_cast<int>(instance.kinds.size());
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(num_logical);
  for (int u = 0; u < static_cast<int>(serving.size()); ++u)
    omega[serving[u]] += instance.weights[u];
  double value = 0.0;
  for (int u = 0; u < static_cast<int>(serving.size()); ++u) {
    const int b = serving[u];
    const double rate = instance.num_rbs * (instance.avg_nabs(u, b) * (1.0 - beta) +
                                            instance.avg_abs(u, b) * beta);
    if (rate <= 0.0) return kNegInf;
    value += instance.weights[u] * std::log(instance.weights[u] * rate / omega[b]);
  }
  return value;
}

EnumerationResult enumerate_optimum(const FlatInstance& instance,
                                    std::optional<double> fixed_beta) {
  const int num_ues = static_cast<int>(instance.weights.size());
  const int num_logical = static_cast<int>(instance.kinds.size());

  std::vector<std::vector<int>> candidates(num_ues);
  double states = 1.0;
  for (int u = 0; u < num_ues; ++u) {
    for (int b = 0; b < num_logical; ++b)
      if (instance.eligibility.ok(u, b) &&
          instance.avg_nabs(u, b) + instance.avg_abs(u, b) > 0.0)
        candidates[u].push_back(b);
    if (candidates[u].empty())
      throw InfeasibleError("UE " + std::to_string(u) + " has no usable eNB");
    states *= static_cast<double>(candidates[u].size());
  }
  if (states > 1e6)
    throw InfeasibleError("instance too large to enumerate (" +
                          std::to_string(states) + " assignments)");

  EnumerationResult best;
  best.utility = kNegInf;
  std::vector<int> choice(num_ues, 0);
  std::vector<int> serving(num_ues);
  while (true) {
    for (int u = 0; u < num_ues; ++u) serving[u] = candidates[u][choice[u]];
    const double beta =
        fixed_beta ? *fixed_beta : optimal_abs(serving, instance.weights, instance.kinds);
    const double utility = reduced_objective(instance, serving, beta);
    if (utility > best.utility) {
      best.utility = utility;
      best.beta = beta;
      best.serving = serving;
    }
    int u = 0;
    for (; u < num_ues; ++u) {
      if (++choice[u] < static_cast<int>(candidates[u].size())) break;
      choice[u] = 0;
    }
    if (u == num_ues) break;
  }
  if (best.utility == kNegInf)
    throw InfeasibleError("every enumerated assignment is infeasible");
  return best;
}

Solution bcd_solve(const Scenario& scenario, const SolverOptions& options) {
  const auto kinds = scenario.index.kinds();
  const bool has_pico = scenario.index.num_pico > 0;
  const int num_logical = scenario.index.size();

  std::vector<int> serving =
      max_rsrp_serving(scenario.rsrp, scenario.topology, scenario.index,
                       scenario.eligibility);
  // The initial max-RSRP association never attaches anyone to a CRE sub-eNB,
  // so the closed-form beta of the start point is 0 and would hide the ABS
  // phase from the association step entirely.  Start from the neutral
  // midpoint instead; the ABS block replaces it from the first cycle on.
  double beta = has_pico ? 0.5 : 0.0;

  auto allocate = [&](const std::vector<int>& assoc, double b) {
    return build_allocation(assoc, b, scenario.rates, scenario.weights, scenario.index,
                            options.schedule == ScheduleSolver::pf_numeric
                                ? SchedulePolicy::pf_numeric
                                : SchedulePolicy::closed_form,
                            options.threads, options.pf);
  };

  Solution solution;
  solution.association = Association::from_serving(serving, num_logical);
  solution.allocation = allocate(serving, beta);
  solution.beta = beta;
  solution.utility =
      objective(solution.association, solution.allocation, scenario.rates, scenario.weights);
  solution.trace.push_back({0, solution.utility, 0, beta});

  Solution best = solution;
  AssociationDriver driver;
  double utility = solution.utility;

  for (int iteration = 1; iteration <= options.max_iters; ++iteration) {
    const double beta_assoc = has_pico ? clamp_beta(beta) : beta;
    const Eigen::MatrixXd rates_ub = effective_rates(scenario.rates, beta_assoc);

    int moves = 0;
    if (options.association == AssociationSolver::heuristic) {
      moves = driver.advance(serving, rates_ub, scenario.weights, scenario.eligibility);
    } else {
      RelaxedResult relaxed = relaxed_association(rates_ub, scenario.weights,
                                                  scenario.eligibility,
                                                  {options.relaxed_tol, 10000});
      std::vector<int> rounded(serving.size());
      for (int u = 0; u < static_cast<int>(serving.size()); ++u) {
        int best_b = 0;
        double best_s = -1.0;
        for (int b = 0; b < num_logical; ++b)
          if (relaxed.s(u, b) > best_s) {
            best_s = relaxed.s(u, b);
            best_b = b;
          }
        rounded[u] = best_b;
        if (rounded[u] != serving[u]) ++moves;
      }
      serving = std::move(rounded);
      solution.upper_bound = relaxed.objective;
    }

    const double beta_new = optimal_abs(serving, scenario.weights, kinds);
    Allocation allocation = allocate(serving, beta_new);
    Association association = Association::from_serving(serving, num_logical);
    const double utility_new =
        objective(association, allocation, scenario.rates, scenario.weights);
    solution.trace.push_back({iteration, utility_new, moves, beta_new});

    const bool fixed_point = moves == 0 && std::abs(beta_new - beta) <= 1e-9;
    const bool plateau =
        std::abs(utility_new - utility) <= options.utility_tol * std::max(1.0, std::abs(utility_new));

    solution.association = std::move(association);
    solution.allocation = std::move(allocation);
    solution.beta = beta_new;
    solution.utility = utility_new;
    if (utility_new > best.utility) {
      best = solution;
    }
    beta = beta_new;
    utility = utility_new;
    if (fixed_point || plateau) {
      solution.converged = true;
      break;
    }
  }

  if (!solution.converged) {
    const auto trace = solution.trace;
    const auto bound = solution.upper_bound;
    solution = std::move(best);
    solution.trace = trace;
    solution.upper_bound = bound;
    solution.converged = false;
  }
  if (options.association == AssociationSolver::relaxed_rounded) {
    const double beta_bound = has_pico ? clamp_beta(solution.beta) : solution.beta;
    solution.upper_bound =
        relaxed_association(effective_rates(scenario.rates, beta_bound), scenario.weights,
                            scenario.eligibility, {options.relaxed_tol, 10000})
            .objective;
  }
  return solution;
}

void validate_association(const Association& association, const Eligibility& eligibility) {
  const double row_tol = association.mode == AssociationMode::binary ? 0.0 : 1e-9;
  for (int u = 0; u < association.s.rows(); ++u) {
    double row_sum = 0.0;
    for (int b = 0; b < association.s.cols(); ++b) {
      const double s = association.s(u, b);
      if (s < 0.0 || s > 1.0)
        throw std::runtime_error("association entry out of [0,1]");
      if (association.mode == AssociationMode::binary && s != 0.0 && s != 1.0)
        throw std::runtime_error("binary association entry not in {0,1}");
      if (s > 0.0 && !eligibility.ok(u, b))
        throw std::runtime_error("association uses an ineligible (ue, eNB) pair");
      row_sum += s;
    }
    if (std::abs(row_sum - 1.0) > row_tol)
      throw std::runtime_error("association row " + std::to_string(u) +
                               " sums to " + std::to_string(row_sum));
  }
}

void validate_solution(const Solution& solution, const Scenario& scenario,
                       double budget_tol) {
  validate_association(solution.association, scenario.eligibility);
  if (solution.beta < 0.0 || solution.beta > 1.0)
    throw std::runtime_error("beta out of [0,1]");

  const int num_ues = scenario.topology.num_ues();
  const int num_logical = scenario.index.size();
  const int num_rbs = scenario.rates.num_rbs;
  std::vector<char> nonempty(num_logical, 0);
  for (int u = 0; u < num_ues; ++u)
    for (int b = 0; b < num_logical; ++b)
      if (solution.association.s(u, b) > 0.0) nonempty[b] = 1;

  for (int u = 0; u < num_ues; ++u) {
    for (int b = 0; b < num_logical; ++b) {
      const double cap = solution.association.s(u, b);
      for (int r = 0; r < num_rbs; ++r) {
        const double x = solution.allocation.x(u, b, r);
        const double y = solution.allocation.y(u, b, r);
        if (x < 0.0 || x > cap || y < 0.0 || y > cap)
          throw std::runtime_error("share bound violated at ue " + std::to_string(u));
      }
    }
  }
  for (int b = 0; b < num_logical; ++b) {
    if (!nonempty[b]) continue;
    for (int r = 0; r < num_rbs; ++r) {
      double sum_x = 0.0, sum_y = 0.0;
      for (int u = 0; u < num_ues; ++u) {
        sum_x += solution.allocation.x(u, b, r);
        sum_y += solution.allocation.y(u, b, r);
      }
      if (std::abs(sum_x - (1.0 - solution.beta)) > budget_tol)
        throw std::runtime_error("nABS budget violated at eNB " + std::to_string(b));
      if (std::abs(sum_y - solution.beta) > budget_tol)
        throw std::runtime_error("ABS budget violated at eNB " + std::to_string(b));
    }
  }

  if (solution.starved_ues.empty()) {
    const double recomputed = objective(solution.association, solution.allocation,
                                        scenario.rates, scenario.weights);
    if (std::abs(recomputed - solution.utility) > 1e-9 * std::max(1.0, std::abs(recomputed)))
      throw std::runtime_error("stored utility differs from recomputed objective");
  } else if (solution.utility != kNegInf) {
    throw std::runtime_error("starved solution must carry -inf utility");
  }
}

}  // namespace hetopt
