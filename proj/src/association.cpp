#include "hetopt/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hetopt/errors.hpp"

namespace hetopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Minimum exact-objective gain for a greedy move; filters numerical noise so
// the pass terminates.
constexpr double kMoveThreshold = 1e-10;

double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

// Euclidean projection of v onto {x >= 0, sum x = budget}.
void project_simplex(std::vector<double>& v, double budget) {
  const int n = static_cast<int>(v.size());
  std::vector<double> sorted(v);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (int j = 0; j < n; ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - budget) / (j + 1);
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  for (double& x : v) x = std::max(x - tau, 0.0);
}

}  // namespace

Association Association::from_serving(const std::vector<int>& serving, int num_logical) {
  Association a;
  a.mode = AssociationMode::binary;
  a.s = Eigen::MatrixXd::Zero(static_cast<int>(serving.size()), num_logical);
  for (int u = 0; u < static_cast<int>(serving.size()); ++u) a.s(u, serving[u]) = 1.0;
  return a;
}

std::vector<int> Association::serving() const {
  std::vector<int> out(s.rows(), -1);
  for (int u = 0; u < s.rows(); ++u) {
    for (int b = 0; b < s.cols(); ++b)
      if (s(u, b) == 1.0) {
        out[u] = b;
        break;
      }
  }
  return out;
}

Eigen::MatrixXd effective_rates(const RateTable& rates, double beta) {
  return rates.num_rbs * (rates.avg_nabs * (1.0 - beta) + rates.avg_abs * beta);
}

double relaxed_objective(const Eigen::MatrixXd& s, const Eigen::MatrixXd& rates_ub,
                         const Eigen::VectorXd& weights) {
  const Eigen::VectorXd omega = s.transpose() * weights;
  double value = 0.0;
  for (int u = 0; u < s.rows(); ++u) {
    for (int b = 0; b < s.cols(); ++b) {
      const double share = s(u, b);
      if (share <= 0.0) continue;
      if (rates_ub(u, b) <= 0.0) return kNegInf;
      value += share * weights[u] *
               std::log(weights[u] * rates_ub(u, b) / std::max(omega[b], kOmegaFloor));
    }
  }
  return value;
}

Eigen::MatrixXd association_gradient(const Eigen::MatrixXd& s,
                                     const Eigen::MatrixXd& rates_ub,
                                     const Eigen::VectorXd& weights,
                                     const Eligibility& eligibility) {
  const Eigen::VectorXd omega = s.transpose() * weights;
  Eigen::MatrixXd grad(s.rows(), s.cols());
  for (int u = 0; u < s.rows(); ++u) {
    for (int b = 0; b < s.cols(); ++b) {
      if (!eligibility.ok(u, b) || rates_ub(u, b) <= 0.0) {
        grad(u, b) = kNegInf;
        continue;
      }
      grad(u, b) =
          weights[u] * (std::log(rates_ub(u, b) / std::max(omega[b], kOmegaFloor)) - 1.0);
    }
  }
  return grad;
}

RelaxedResult relaxed_association(const Eigen::MatrixXd& rates_ub,
                                  const Eigen::VectorXd& weights,
                                  const Eligibility& eligibility,
                                  const RelaxedOptions& options) {
  const int num_ues = static_cast<int>(rates_ub.rows());
  const int num_logical = static_cast<int>(rates_ub.cols());

  std::vector<std::vector<int>> usable(num_ues);
  for (int u = 0; u < num_ues; ++u) {
    for (int b = 0; b < num_logical; ++b)
      if (eligibility.ok(u, b) && rates_ub(u, b) > 0.0) usable[u].push_back(b);
    if (usable[u].empty())
      throw InfeasibleError("UE " + std::to_string(u) +
                            " has no eligible eNB with positive rate");
  }

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(num_ues, num_logical);
  for (int u = 0; u < num_ues; ++u)
    for (int b : usable[u]) s(u, b) = 1.0 / static_cast<double>(usable[u].size());

  double f = relaxed_objective(s, rates_ub, weights);
  double step = 1.0;
  double gap = std::numeric_limits<double>::infinity();
  int iter = 0;
  Eigen::MatrixXd grad(num_ues, num_logical);
  Eigen::MatrixXd candidate = s;

  for (; iter < options.max_iters; ++iter) {
    const Eigen::VectorXd omega = s.transpose() * weights;
    gap = 0.0;
    for (int u = 0; u < num_ues; ++u) {
      double best = kNegInf;
      double current = 0.0;
      for (int b : usable[u]) {
        const double g =
            weights[u] * (std::log(rates_ub(u, b) / std::max(omega[b], kOmegaFloor)) - 1.0);
        grad(u, b) = g;
        best = std::max(best, g);
        current += s(u, b) * g;
      }
      gap += best - current;
    }
    if (gap <= options.tol) break;

    bool advanced = false;
    while (step >= 1e-18) {
      double inner = 0.0;
      for (int u = 0; u < num_ues; ++u) {
        std::vector<double> row(usable[u].size());
        for (std::size_t i = 0; i < usable[u].size(); ++i)
          row[i] = s(u, usable[u][i]) + step * grad(u, usable[u][i]);
        project_simplex(row, 1.0);
        for (std::size_t i = 0; i < usable[u].size(); ++i) {
          const int b = usable[u][i];
          candidate(u, b) = row[i];
          inner += grad(u, b) * (row[i] - s(u, b));
        }
      }
      const double f_candidate = relaxed_objective(candidate, rates_ub, weights);
      if (f_candidate >= f + 1e-4 * inner && f_candidate >= f) {
        s = candidate;
        f = f_candidate;
        step = std::min(step * 1.6, 1e3);
        advanced = true;
        break;
      }
      step *= 0.5;
    }
    if (!advanced) break;  // no representable ascent step remains
  }

  return {std::move(s), f, gap, iter};
}

HeuristicStep heuristic_association_step(const std::vector<int>& serving,
                                         const Eigen::MatrixXd& rates_ub,
                                         const Eigen::VectorXd& weights,
                                         const Eligibility& eligibility) {
  const int num_ues = static_cast<int>(rates_ub.rows());
  const int num_logical = static_cast<int>(rates_ub.cols());
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(num_logical);
  for (int u = 0; u < num_ues; ++u) omega[serving[u]] += weights[u];

  auto marginal = [&](int u, int b) {
    if (!eligibility.ok(u, b) || rates_ub(u, b) <= 0.0) return kNegInf;
    const double load = omega[b] > 0.0 ? omega[b] : weights[u];
    return weights[u] * (std::log(rates_ub(u, b) / std::max(load, kOmegaFloor)) - 1.0);
  };

  HeuristicStep result;
  result.serving = serving;
  for (int u = 0; u < num_ues; ++u) {
    int best = serving[u];
    double best_value = marginal(u, serving[u]);
    for (int b = 0; b < num_logical; ++b) {
      if (b == serving[u]) continue;
      const double value = marginal(u, b);
      if (value > best_value) {
        best = b;
        best_value = value;
      }
    }
    if (best != serving[u]) {
      result.serving[u] = best;
      ++result.handovers;
    }
  }
  return result;
}

double binary_association_objective(const std::vector<int>& serving,
                                    const Eigen::MatrixXd& rates_ub,
                                    const Eigen::VectorXd& weights) {
  const int num_logical = static_cast<int>(rates_ub.cols());
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(num_logical);
  for (int u = 0; u < static_cast<int>(serving.size()); ++u) omega[serving[u]] += weights[u];
  double value = 0.0;
  for (int u = 0; u < static_cast<int>(serving.size()); ++u) {
    const double rate = rates_ub(u, serving[u]);
    if (rate <= 0.0) return kNegInf;
    value += weights[u] * std::log(weights[u] * rate);
  }
  for (int b = 0; b < num_logical; ++b) value -= xlogx(omega[b]);
  return value;
}

int greedy_improvement_pass(std::vector<int>& serving, const Eigen::MatrixXd& rates_ub,
                            const Eigen::VectorXd& weights, const Eligibility& eligibility,
                            int max_moves) {
  const int num_ues = static_cast<int>(rates_ub.rows());
  const int num_logical = static_cast<int>(rates_ub.cols());
  if (max_moves < 0) max_moves = 20 * num_ues;
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(num_logical);
  for (int u = 0; u < num_ues; ++u) omega[serving[u]] += weights[u];

  int moves = 0;
  while (moves < max_moves) {
    int best_u = -1, best_b = -1;
    double best_delta = 0.0;
    for (int u = 0; u < num_ues; ++u) {
      const int a = serving[u];
      const double w = weights[u];
      const double rate_a = rates_ub(u, a);
      for (int b = 0; b < num_logical; ++b) {
        if (b == a || !eligibility.ok(u, b) || rates_ub(u, b) <= 0.0) continue;
        double delta = -xlogx(omega[b] + w) + xlogx(omega[b]) + xlogx(omega[a]) -
                       xlogx(omega[a] - w);
        delta += rate_a > 0.0 ? w * std::log(rates_ub(u, b) / rate_a)
                              : std::numeric_limits<double>::infinity();
        if (delta > best_delta) {
          best_delta = delta;
          best_u = u;
          best_b = b;
        }
      }
    }
    if (best_u < 0 || best_delta <= kMoveThreshold) break;
    omega[serving[best_u]] -= weights[best_u];
    if (omega[serving[best_u]] < 0.0) omega[serving[best_u]] = 0.0;
    omega[best_b] += weights[best_u];
    serving[best_u] = best_b;
    ++moves;
  }
  return moves;
}

int AssociationDriver::advance(std::vector<int>& serving, const Eigen::MatrixXd& rates_ub,
                               const Eigen::VectorXd& weights,
                               const Eligibility& eligibility) {
  if (!greedy_) {
    HeuristicStep step = heuristic_association_step(serving, rates_ub, weights, eligibility);
    if (step.handovers == 0) {
      history_.push_back(serving);
      if (history_.size() > 4) history_.erase(history_.begin());
      return 0;
    }
    bool cycle = false;
    for (const auto& past : history_)
      if (past == step.serving) cycle = true;
    const double f_old = binary_association_objective(serving, rates_ub, weights);
    const double f_new = binary_association_objective(step.serving, rates_ub, weights);
    if (!cycle && f_new >= f_old - 1e-12 * (1.0 + std::abs(f_old))) {
      serving = step.serving;
      history_.push_back(serving);
      if (history_.size() > 4) history_.erase(history_.begin());
      return step.handovers;
    }
    greedy_ = true;  // synchronous rounds are oscillating: stay exact from here on
  }
  return greedy_improvement_pass(serving, rates_ub, weights, eligibility);
}

FixedPointResult heuristic_fixed_point(std::vector<int> serving,
                                       const Eigen::MatrixXd& rates_ub,
                                       const Eigen::VectorXd& weights,
                                       const Eligibility& eligibility, int max_steps) {
  AssociationDriver driver;
  FixedPointResult result;
  for (int step = 0; step < max_steps; ++step) {
    const int moves = driver.advance(serving, rates_ub, weights, eligibility);
    ++result.steps;
    if (moves == 0) {
      result.fixed = true;
      break;
    }
  }
  result.serving = std::move(serving);
  return result;
}

}  // namespace hetopt
