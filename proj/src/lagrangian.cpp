#include "qgroupoid/lagrangian.hpp"

#include <cmath>
#include <numeric>

#include "qgroupoid/error.hpp"

namespace qgroupoid {

QLagrangian::QLagrangian(GroupoidPtr groupoid, std::vector<Complex> values, double tol)
    : groupoid_(std::move(groupoid)), values_(std::move(values)) {
    if (!groupoid_) throw ValidationError("lagrangian needs a groupoid");
    if (values_.size() != groupoid_->element_count())
        throw ValidationError("lagrangian has " + std::to_string(values_.size()) + " values for " +
                              std::to_string(groupoid_->element_count()) + " elements");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const auto e = element_id(i);
        if (std::abs(values_[i] - std::conj(values_[index(groupoid_->inverse(e))])) > tol)
            throw ValidationError("lagrangian is not self-adjoint at " + groupoid_->element_label(e));
    }
}

QLagrangian QLagrangian::zero(GroupoidPtr groupoid) {
    const std::size_t n = groupoid->element_count();
    return QLagrangian(std::move(groupoid), std::vector<Complex>(n));
}

double QLagrangian::self_adjoint_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
        worst = std::max(worst, std::abs(values_[i] - std::conj(values_[index(groupoid_->inverse(element_id(i)))])));
    return worst;
}

QLagrangian qubit_lagrangian(double v_plus, double v_minus, double mu, double delta) {
    auto g = build_a2();
    std::vector<Complex> values(g->element_count());
    values[index(g->element(a2::kUnitPlus))] = -v_plus;
    values[index(g->element(a2::kUnitMinus))] = -v_minus;
    values[index(g->element(a2::kAlpha))] = Complex(mu, delta);
    values[index(g->element(a2::kAlphaInv))] = Complex(mu, -delta);
    return QLagrangian(std::move(g), std::move(values), 0.0);
}

OutcomeBias::OutcomeBias(GroupoidPtr groupoid, std::vector<double> probabilities)
    : groupoid_(std::move(groupoid)), probabilities_(std::move(probabilities)) {
    if (!groupoid_) throw ValidationError("bias needs a groupoid");
    if (probabilities_.size() != groupoid_->outcome_count())
        throw ValidationError("bias has " + std::to_string(probabilities_.size()) + " values for " +
                              std::to_string(groupoid_->outcome_count()) + " outcomes");
    for (double p : probabilities_)
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("bias values must lie in [0, 1]");
    const double total = std::accumulate(probabilities_.begin(), probabilities_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("bias must sum to 1");
}

OutcomeBias OutcomeBias::uniform(GroupoidPtr groupoid) {
    const std::size_t m = groupoid->outcome_count();
    return OutcomeBias(std::move(groupoid), std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

OutcomeBias OutcomeBias::qubit(double p_plus) {
    auto g = build_a2();
    std::vector<double> p(2);
    p[index(g->outcome(a2::kPlus))] = p_plus;
    p[index(g->outcome(a2::kMinus))] = 1.0 - p_plus;
    return OutcomeBias(std::move(g), std::move(p));
}

}  // namespace qgroupoid
