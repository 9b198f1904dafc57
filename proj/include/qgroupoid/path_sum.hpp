#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "qgroupoid/history.hpp"
#include "qgroupoid/lagrangian.hpp"

namespace qgroupoid {

inline constexpr double kDefaultHistoryCap = 1e7;

/// Number of future-oriented N-step histories a_i → a_f, as a double so that
/// counts beyond 2⁶⁴ still compare against a cap.
double count_histories(const FiniteGroupoid& g, OutcomeId a_i, OutcomeId a_f, std::size_t n_steps);

/// Calls `visit` with the step sequence of every future N-step history a_i → a_f,
/// in lexicographic element order. Throws CapExceededError if the count exceeds `cap`.
void visit_histories(const FiniteGroupoid& g, OutcomeId a_i, OutcomeId a_f, std::size_t n_steps,
                     const std::function<void(const std::vector<ElementId>&)>& visit,
                     double cap = kDefaultHistoryCap);

/// Every future N-step history a_i → a_f as a single future segment on [t_start, t_start + Nτ].
std::vector<History> enumerate_histories(const GroupoidPtr& g, OutcomeId a_i, OutcomeId a_f, std::size_t n_steps,
                                         double t_start = 0.0, double tau = 1.0, double cap = kDefaultHistoryCap);

/// sqrt(p_source·p_target)·exp((i/ħ)ℓτ), the one-step amplitude of a transition.
Complex step_amplitude(double p_source, double p_target, Complex ell, double tau, double hbar);

/// U[b][a] = Σ_{α: a → b} step_amplitude(p(a), p(b), ℓ(α), τ, ħ).
Eigen::MatrixXcd single_step_matrix(const QLagrangian& ell, const OutcomeBias& p, double tau, double hbar);

/// Entry [a_f][a_i] = Σ over future N-step histories of φ(w)·Π p(intermediate outcome).
/// Throws CapExceededError when the total number of histories exceeds `cap`.
Eigen::MatrixXcd n_step_path_sum(const QLagrangian& ell, const OutcomeBias& p, double tau, double hbar,
                                 std::size_t n_steps, double cap = kDefaultHistoryCap);

}  // namespace qgroupoid
