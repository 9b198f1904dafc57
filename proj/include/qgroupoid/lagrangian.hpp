#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qgroupoid/groupoid.hpp"

namespace qgroupoid {

using Complex = std::complex<double>;

inline constexpr double kSelfAdjointTolerance = 1e-12;

/// A q-Lagrangian: complex function ℓ on Γ with ℓ(α) = conj(ℓ(α⁻¹)).
class QLagrangian {
public:
    /// Values are indexed by element; throws ValidationError if ℓ is not
    /// self-adjoint within `tol` or the size does not match the groupoid.
    QLagrangian(GroupoidPtr groupoid, std::vector<Complex> values, double tol = kSelfAdjointTolerance);

    /// ℓ ≡ 0.
    static QLagrangian zero(GroupoidPtr groupoid);

    const GroupoidPtr& groupoid() const noexcept { return groupoid_; }
    Complex operator()(ElementId e) const { return values_.at(index(e)); }
    Complex at(std::string_view label) const { return (*this)(groupoid_->element(label)); }
    const std::vector<Complex>& values() const noexcept { return values_; }

    /// Largest |ℓ(α) − conj(ℓ(α⁻¹))| over the groupoid.
    double self_adjoint_defect() const;

private:
    GroupoidPtr groupoid_;
    std::vector<Complex> values_;
};

/// Most general self-adjoint ℓ on A₂: ℓ(1₊) = −V₊, ℓ(1₋) = −V₋, ℓ(α) = μ + iδ, ℓ(α⁻¹) = μ − iδ.
QLagrangian qubit_lagrangian(double v_plus, double v_minus, double mu, double delta);

/// Probability measure on the outcomes of a groupoid.
class OutcomeBias {
public:
    /// Throws ValidationError unless every value is in [0, 1] and the sum is 1 within 1e-12.
    OutcomeBias(GroupoidPtr groupoid, std::vector<double> probabilities);

    static OutcomeBias uniform(GroupoidPtr groupoid);
    /// A₂ bias with p₊ = p and p₋ = 1 − p.
    static OutcomeBias qubit(double p_plus);

    const GroupoidPtr& groupoid() const noexcept { return groupoid_; }
    double operator()(OutcomeId a) const { return probabilities_.at(index(a)); }
    const std::vector<double>& values() const noexcept { return probabilities_; }

private:
    GroupoidPtr groupoid_;
    std::vector<double> probabilities_;
};

}  // namespace qgroupoid
