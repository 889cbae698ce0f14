#pragma once

#include <optional>

#include "trotter/error_lab.hpp"
#include "trotter/schedule.hpp"

namespace trotter {

/// Resources for eigenvalue readout with a phase register, minimized over
/// the base evolution time under the budget split between register
/// discretization and product-formula error.
struct ResourceEstimate {
  double error_budget;  // energy units
  double w;             // error constant: trotter error <= w t^p
  int order;
  double t_star;       // optimal base evolution time
  double t_max;        // pi / ||H||, +inf when the norm is unknown
  double b_star_real;  // register-size lower bound, log2
  long long b_star;    // ceil(b_star_real)
  double q_star;       // 2^b_star_real - 1 (real-valued lower bound)
  double o_star;       // q_star * 2L
  int n_terms;
  bool feasible;        // t_star <= t_max
  bool queries_positive;  // q_star > 0; false means the budget is too loose
};

/// t that minimizes the query count for an order-p formula:
/// (eps / ((p+1) w))^{1/p}; sqrt(eps / (3w)) at p = 2.
double optimal_time(double w, double eps, int order);

/// Second-order closed forms:
///   B* = log2(pi 3^{3/2} w^{1/2} / (2 eps^{3/2}))
///   Q* = 2^{B*} - 1,  O* = Q* 2L,  t* = sqrt(eps / 3w)
/// At t* the budget splits exactly into 2eps/3 discretization and eps/3
/// formula error.
ResourceEstimate qpe_resources(double w, double eps, int n_terms,
                               std::optional<double> norm_h = {});

/// Order-p query count at the optimal time:
/// 5^{p/2-1} (pi w^{1/p} (p+1)^{1/p+1} / (p eps^{1/p+1}) - 1).
double higher_order_query(double w_p, double eps, int order);

struct MultiStepQuery {
  double q;       // pi 3^{3/2} w^{1/2} / (2 eps^{3/2} S^{1/2}) - S
  double t_star;  // sqrt(eps S / (3 w)); grows with S, so check t_max
};

/// Second-order query count when the base unitary repeats S steps.
MultiStepQuery multi_step_query(double w, double eps, int n_steps);

/// Largest base time with unambiguous eigenphase readout; ||H|| stands in
/// for the effective norm.
double t_max(double norm_h);

/// Resource comparison for one operator: the classically computable
/// commutator-bound constant against fitted constants from the exact
/// spectrum and from the measurable reference-approximation phase.
struct CompareReport {
  double w_commutator;
  double w_exact;
  double w_quantum;
  ResourceEstimate classical;  // qpe_resources(w_commutator, ...)
  ResourceEstimate exact;      // qpe_resources(w_exact, ...)
  ResourceEstimate quantum;    // qpe_resources(w_quantum, ...)
  double measurement_operations;  // cost of one phase measurement:
                                  // (Q_p + Q_p') * 2L Pauli evolutions
};

CompareReport compare_estimates(const PauliSum& h, Eigen::Index k, double eps,
                                int order = 2, int reference_order = 4,
                                int dense_limit = kDefaultDenseLimit);

}  // namespace trotter
