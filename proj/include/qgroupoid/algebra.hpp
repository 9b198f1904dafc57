#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "qgroupoid/groupoid.hpp"
#include "qgroupoid/lagrangian.hpp"

namespace qgroupoid {

inline constexpr double kDefaultTolerance = 1e-10;

/// An element a = Σ a_α α of the groupoid algebra ν(Γ).
///
/// Coefficients are stored densely in element order; an absent coefficient is zero.
class AlgebraElement {
public:
    explicit AlgebraElement(GroupoidPtr groupoid);
    AlgebraElement(GroupoidPtr groupoid, std::vector<Complex> coefficients);

    /// c·δ_α
    static AlgebraElement delta(GroupoidPtr groupoid, ElementId e, Complex c = 1.0);
    static AlgebraElement delta(GroupoidPtr groupoid, std::string_view label, Complex c = 1.0);
    /// Σ ℓ(γ) δ_γ
    static AlgebraElement from_lagrangian(const QLagrangian& ell);

    const GroupoidPtr& groupoid() const noexcept { return groupoid_; }
    const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }
    Complex operator[](ElementId e) const { return coefficients_.at(index(e)); }
    Complex& operator[](ElementId e) { return coefficients_.at(index(e)); }
    Complex at(std::string_view label) const { return (*this)[groupoid_->element(label)]; }

    AlgebraElement& operator+=(const AlgebraElement& other);
    AlgebraElement& operator-=(const AlgebraElement& other);
    AlgebraElement& operator*=(Complex scalar);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
    friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
    /// Convolution product.
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

private:
    GroupoidPtr groupoid_;
    std::vector<Complex> coefficients_;
};

/// Throws GroupoidMismatchError unless both elements live on the same groupoid.
void require_same_groupoid(const AlgebraElement& a, const AlgebraElement& b);

/// Largest coefficient-wise |a_α − b_α|.
double max_abs_difference(const AlgebraElement& a, const AlgebraElement& b);

/// (a·b)_γ = Σ_{α∘β = γ} a_α b_β
AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b);

/// 𝟏 = Σ_{a ∈ Ω} 1_a
AlgebraElement algebra_unit(const GroupoidPtr& g);

/// a* = Σ conj(a_α) α⁻¹
AlgebraElement involute(const AlgebraElement& a);

bool is_observable(const AlgebraElement& a, double tol = kDefaultTolerance);

/// π₀(a) on ℋ₀ = span{|x⟩ : x ∈ Ω}: entry (target, source) accumulates a_α,
/// rows and columns in the groupoid's outcome order.
Eigen::MatrixXcd fundamental_rep(const AlgebraElement& a);

/// Inverse of π₀ on principal groupoids (at most one transition per outcome pair).
/// Throws ValidationError if π₀ is not injective or `m` has support where Γ has no transition.
AlgebraElement from_representation(const GroupoidPtr& g, const Eigen::MatrixXcd& m, double tol = kDefaultTolerance);

/// Largest singular value of π₀(a).
double operator_norm(const AlgebraElement& a);

/// a·b − b·a
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

/// iħ[a, h], the Heisenberg-like right-hand side in the form it is usually
/// written for groupoid algebras. Throws ValidationError unless h is self-adjoint.
AlgebraElement heisenberg_rhs(const AlgebraElement& a, const AlgebraElement& h, double hbar,
                              double tol = kDefaultTolerance);

/// Pull-back of E π₀(a) E⁻¹ with E = exp((i t/ħ) π₀(h)); its t-derivative at 0 is (i/ħ)[h, a].
/// Throws ValidationError unless h is self-adjoint and π₀ is faithful on the groupoid.
AlgebraElement evolve_observable(const AlgebraElement& a, const AlgebraElement& h, double t, double hbar,
                                 double tol = kDefaultTolerance);

/// exp(i s H) for Hermitian H via its eigendecomposition.
Eigen::MatrixXcd hermitian_phase_exponential(const Eigen::MatrixXcd& h, double s);

/// A vector |ψ⟩ in ℋ₀, indexed by outcomes.
struct StateVector {
    Eigen::VectorXcd amplitudes;
};

/// A density operator W on ℋ₀.
class DensityMatrix {
public:
    /// Throws ValidationError unless W is Hermitian, positive semidefinite and of unit trace within `tol`.
    explicit DensityMatrix(Eigen::MatrixXcd w, double tol = kDefaultTolerance);

    static DensityMatrix pure(const StateVector& psi);

    const Eigen::MatrixXcd& matrix() const noexcept { return w_; }

private:
    Eigen::MatrixXcd w_;
};

/// ρ_ψ(a) = ⟨ψ|π₀(a)|ψ⟩ / ⟨ψ|ψ⟩; throws ValidationError for a zero vector.
Complex state_expectation(const StateVector& psi, const AlgebraElement& a);
/// ρ_W(a) = Tr(W π₀(a))
Complex state_expectation(const DensityMatrix& w, const AlgebraElement& a);

/// One `NAME = re,im` line per non-zero coefficient, in element order.
std::string format_element(const AlgebraElement& a);
/// Reads `NAME = re,im` lines; unlisted coefficients are zero.
AlgebraElement parse_element(const GroupoidPtr& g, std::string_view text);

}  // namespace qgroupoid
