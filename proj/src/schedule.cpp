#include "hetopt/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hetopt/errors.hpp"
#include "hetopt/parallel.hpp"

namespace hetopt {

namespace {

// Euclidean projection of every column of m onto {x >= 0, sum x = budget}.
void project_columns(Eigen::MatrixXd& m, double budget) {
  const int rows = static_cast<int>(m.rows());
  std::vector<double> sorted(rows);
  for (int c = 0; c < m.cols(); ++c) {
    for (int i = 0; i < rows; ++i) sorted[i] = m(i, c);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0, tau = 0.0;
    for (int j = 0; j < rows; ++j) {
      cumulative += sorted[j];
      const double candidate = (cumulative - budget) / (j + 1);
      if (sorted[j] - candidate > 0.0) tau = candidate;
    }
    for (int i = 0; i < rows; ++i) m(i, c) = std::max(m(i, c) - tau, 0.0);
  }
}

bool rates_are_flat(const Eigen::MatrixXd& rates, double spread_tol) {
  for (int u = 0; u < rates.rows(); ++u) {
    const double hi = rates.row(u).maxCoeff();
    const double lo = rates.row(u).minCoeff();
    if (hi - lo > spread_tol * std::max(hi, 1e-300)) return false;
  }
  return true;
}

double pf_value(const Eigen::MatrixXd& rates, const Eigen::VectorXd& weights,
                const Eigen::MatrixXd& shares) {
  double value = 0.0;
  for (int u = 0; u < rates.rows(); ++u) {
    const double total = rates.row(u).dot(shares.row(u));
    if (total <= 0.0) return -std::numeric_limits<double>::infinity();
    value += weights[u] * std::log(total);
  }
  return value;
}

}  // namespace

Eigen::MatrixXd pf_schedule(const Eigen::MatrixXd& rates, const Eigen::VectorXd& weights,
                            double phase_budget, const PfOptions& options) {
  const int num_ues = static_cast<int>(rates.rows());
  const int num_rbs = static_cast<int>(rates.cols());
  if (num_ues == 0 || !(phase_budget > 0.0) || phase_budget > 1.0)
    throw InfeasibleError("pf_schedule needs attached UEs and a budget in (0,1]");
  for (int u = 0; u < num_ues; ++u)
    if (rates.row(u).maxCoeff() <= 0.0)
      throw InfeasibleError("pf_schedule: UE row " + std::to_string(u) +
                            " has no positive rate on any RB");

  const double total_weight = weights.sum();
  if (!options.force_numeric && rates_are_flat(rates, options.flat_spread)) {
    Eigen::MatrixXd shares(num_ues, num_rbs);
    for (int u = 0; u < num_ues; ++u)
      shares.row(u).setConstant(weights[u] * phase_budget / total_weight);
    return shares;
  }

  Eigen::MatrixXd shares =
      Eigen::MatrixXd::Constant(num_ues, num_rbs, phase_budget / num_ues);
  Eigen::MatrixXd grad(num_ues, num_rbs);
  Eigen::MatrixXd candidate(num_ues, num_rbs);
  double f = pf_value(rates, weights, shares);
  double step = 1.0;

  for (int iter = 0; iter < options.max_iters; ++iter) {
    double gap = 0.0;
    for (int u = 0; u < num_ues; ++u) {
      const double total = rates.row(u).dot(shares.row(u));
      grad.row(u) = (weights[u] / total) * rates.row(u);
    }
    for (int r = 0; r < num_rbs; ++r) {
      const double best = grad.col(r).maxCoeff();
      gap += phase_budget * best - grad.col(r).dot(shares.col(r));
    }
    if (gap <= options.tol) break;

    bool advanced = false;
    while (step >= 1e-18) {
      candidate = shares + step * grad;
      project_columns(candidate, phase_budget);
      const double inner = (grad.array() * (candidate - shares).array()).sum();
      const double f_candidate = pf_value(rates, weights, candidate);
      if (f_candidate >= f + 1e-4 * inner && f_candidate >= f) {
        shares.swap(candidate);
        f = f_candidate;
        step = std::min(step * 1.6, 1e3);
        advanced = true;
        break;
      }
      step *= 0.5;
    }
    if (!advanced) break;
  }
  return shares;
}

Eigen::MatrixXd round_robin_shares(int num_ues, int num_rbs, double phase_budget) {
  return Eigen::MatrixXd::Constant(num_ues, num_rbs, phase_budget / num_ues);
}

Allocation closed_form_allocation(const std::vector<int>& serving, double beta,
                                  const Eigen::VectorXd& weights,
                                  const LogicalEnbIndex& index, int num_rbs) {
  const int num_ues = static_cast<int>(serving.size());
  Allocation alloc;
  alloc.x = Array3(num_ues, index.size(), num_rbs);
  alloc.y = Array3(num_ues, index.size(), num_rbs);
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(index.size());
  for (int u = 0; u < num_ues; ++u) omega[serving[u]] += weights[u];
  for (int u = 0; u < num_ues; ++u) {
    const int b = serving[u];
    const double x_share = weights[u] * (1.0 - beta) / omega[b];
    const double y_share = weights[u] * beta / omega[b];
    for (int r = 0; r < num_rbs; ++r) {
      alloc.x(u, b, r) = x_share;
      alloc.y(u, b, r) = y_share;
    }
  }
  return alloc;
}

Allocation build_allocation(const std::vector<int>& serving, double beta,
                            const RateTable& rates, const Eigen::VectorXd& weights,
                            const LogicalEnbIndex& index, SchedulePolicy policy,
                            int threads, const PfOptions& pf) {
  const int num_ues = static_cast<int>(serving.size());
  const int num_rbs = rates.num_rbs;
  Allocation alloc = closed_form_allocation(serving, beta, weights, index, num_rbs);
  if (policy == SchedulePolicy::closed_form) return alloc;

  std::vector<std::vector<int>> attached(index.size());
  for (int u = 0; u < num_ues; ++u) attached[serving[u]].push_back(u);

  parallel_for(index.size(), threads, [&](int b) {
    const auto& ues = attached[b];
    if (ues.empty()) return;
    const bool abs_active = index[b].kind == LogicalKind::pico_cre;
    const double budget = abs_active ? beta : 1.0 - beta;
    Array3& target = abs_active ? alloc.y : alloc.x;
    if (budget <= 0.0) {
      for (int u : ues)
        for (int r = 0; r < num_rbs; ++r) target(u, b, r) = 0.0;
      return;
    }
    Eigen::MatrixXd shares;
    if (policy == SchedulePolicy::round_robin) {
      shares = round_robin_shares(static_cast<int>(ues.size()), num_rbs, budget);
    } else {
      const Array3& table = abs_active ? rates.rate_abs : rates.rate_nabs;
      Eigen::MatrixXd enb_rates(ues.size(), num_rbs);
      Eigen::VectorXd enb_weights(ues.size());
      for (std::size_t i = 0; i < ues.size(); ++i) {
        enb_weights[static_cast<int>(i)] = weights[ues[i]];
        for (int r = 0; r < num_rbs; ++r)
          enb_rates(static_cast<int>(i), r) = table(ues[i], b, r);
      }
      shares = pf_schedule(enb_rates, enb_weights, budget, pf);
    }
    for (std::size_t i = 0; i < ues.size(); ++i)
      for (int r = 0; r < num_rbs; ++r)
        target(ues[i], b, r) = shares(static_cast<int>(i), r);
  });

  // Round-robin is blind on both phases, not just the active one.
  if (policy == SchedulePolicy::round_robin) {
    for (int b = 0; b < index.size(); ++b) {
      const auto& ues = attached[b];
      if (ues.empty()) continue;
      const bool abs_active = index[b].kind == LogicalKind::pico_cre;
      const double budget = abs_active ? 1.0 - beta : beta;
      Array3& other = abs_active ? alloc.x : alloc.y;
      for (int u : ues)
        for (int r = 0; r < num_rbs; ++r)
          other(u, b, r) = budget / static_cast<double>(ues.size());
    }
  }
  return alloc;
}

}  // namespace hetopt
