#include "trotter/qre.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trotter {

namespace {

constexpr double kPi = std::numbers::pi;

void check_positive(double w, double eps) {
  if (!(w > 0.0) || !(eps > 0.0)) {
    throw std::invalid_argument("error constant and budget must be positive");
  }
}

void check_order(int order) {
  if (order < 2 || order % 2 != 0) {
    throw std::invalid_argument("order must be even and >= 2");
  }
}

}  // namespace

double optimal_time(double w, double eps, int order) {
  check_positive(w, eps);
  check_order(order);
  return std::pow(eps / ((order + 1) * w), 1.0 / order);
}

ResourceEstimate qpe_resources(double w, double eps, int n_terms,
                               std::optional<double> norm_h) {
  check_positive(w, eps);
  if (n_terms < 1) throw std::invalid_argument("need at least one term");

  ResourceEstimate est{};
  est.error_budget = eps;
  est.w = w;
  est.order = 2;
  est.n_terms = n_terms;
  est.t_star = std::sqrt(eps / (3.0 * w));
  est.t_max = norm_h ? kPi / *norm_h : std::numeric_limits<double>::infinity();

  const double q_plus_one =
      kPi * std::pow(3.0, 1.5) * std::sqrt(w) / (2.0 * std::pow(eps, 1.5));
  est.b_star_real = std::log2(q_plus_one);
  est.b_star = static_cast<long long>(std::ceil(est.b_star_real));
  est.q_star = q_plus_one - 1.0;
  est.o_star = est.q_star * 2.0 * n_terms;
  est.feasible = est.t_star <= est.t_max;
  est.queries_positive = est.q_star > 0.0;
  return est;
}

double higher_order_query(double w_p, double eps, int order) {
  check_positive(w_p, eps);
  check_order(order);
  const double prefactor = std::pow(5.0, order / 2 - 1);
  const double inv_p = 1.0 / order;
  const double body = kPi * std::pow(w_p, inv_p) *
                          std::pow(order + 1.0, inv_p + 1.0) /
                          (order * std::pow(eps, inv_p + 1.0)) -
                      1.0;
  return prefactor * body;
}

MultiStepQuery multi_step_query(double w, double eps, int n_steps) {
  check_positive(w, eps);
  if (n_steps < 1) throw std::invalid_argument("n_steps must be positive");
  const double s = static_cast<double>(n_steps);
  MultiStepQuery out;
  out.q = kPi * std::pow(3.0, 1.5) * std::sqrt(w) /
              (2.0 * std::pow(eps, 1.5) * std::sqrt(s)) -
          s;
  out.t_star = std::sqrt(eps * s / (3.0 * w));
  return out;
}

double t_max(double norm_h) {
  if (!(norm_h > 0.0)) {
    throw std::invalid_argument("operator norm must be positive");
  }
  return kPi / norm_h;
}

CompareReport compare_estimates(const PauliSum& h, Eigen::Index k, double eps,
                                int order, int reference_order,
                                int dense_limit) {
  const double norm_h = spectral_norm(h, dense_limit);
  const int n_terms = static_cast<int>(h.size());

  CompareReport report{};
  report.w_commutator = commutator_bound(h);

  WkFitOptions opts;
  opts.reference_order = reference_order;
  report.w_exact = fit_wk(h, order, k, FitSource::exact, opts, dense_limit).w;
  report.w_quantum =
      fit_wk(h, order, k, FitSource::approx_phase, opts, dense_limit).w;

  report.classical = qpe_resources(report.w_commutator, eps, n_terms, norm_h);
  report.exact = qpe_resources(report.w_exact, eps, n_terms, norm_h);
  report.quantum = qpe_resources(report.w_quantum, eps, n_terms, norm_h);

  const QueryCount target_cost = query_count(order, 1, n_terms);
  const QueryCount reference_cost = query_count(reference_order, 1, n_terms);
  report.measurement_operations =
      static_cast<double>(target_cost.queries + reference_cost.queries) * 2.0 *
      n_terms;
  return report;
}

}  // namespace trotter
