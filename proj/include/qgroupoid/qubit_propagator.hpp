#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgroupoid/algebra.hpp"
#include "qgroupoid/lagrangian.hpp"

namespace qgroupoid {

/// Vertex coefficients Γ_ab, first index = row (target) outcome.
struct VertexCoefficients {
    Complex mm{1.0};
    Complex mp{1.0};
    Complex pm{1.0};
    Complex pp{1.0};
};

/// Parameters of the qubit unit-time propagator on A₂.
struct PropagatorModel {
    double v_plus = 0.0;
    double v_minus = 0.0;
    double mu = 0.0;
    double delta = 0.0;
    double p = 0.5;  ///< p₊; p₋ = 1 − p
    double tau = 1.0;
    double hbar = 1.0;
    VertexCoefficients gamma;
    double lambda = 0.0;  ///< Λ, action units
    double sigma = 0.0;   ///< Σ, action units

    double p_plus() const noexcept { return p; }
    double p_minus() const noexcept { return 1.0 - p; }
    QLagrangian lagrangian() const { return qubit_lagrangian(v_plus, v_minus, mu, delta); }

    /// Throws ValidationError unless τ, ħ > 0, 0 ≤ p ≤ 1/2 and every value is finite.
    void validate() const;
};

/// U_τ indexed (−, +), rows = target:
/// U₋₋ = Γ₋₋p₋e^{−iτV₋/ħ}, U₋₊ = Γ₋₊√(p₋p₊)e^{(τ/ħ)(−δ+iμ)},
/// U₊₋ = Γ₊₋√(p₊p₋)e^{(τ/ħ)(δ+iμ)}, U₊₊ = Γ₊₊p₊e^{−iτV₊/ħ}.
Eigen::Matrix2cd qubit_propagator(const PropagatorModel& m);

/// Residuals of the eight unitarity equations.
///
/// Each equation is one entry of UU† = I or U†U = I, so residuals are taken entrywise:
/// UU† (−,−), (+,−), (−,+), (+,+), then U†U (−,−), (−,+), (+,−), (+,+).
struct UnitarityReport {
    std::array<double, 8> residuals{};
    double max_residual = 0.0;
    /// | |Γ₋₊|/|Γ₊₋| − e^{2τδ/ħ} |, infinite when Γ₊₋ = 0.
    double relation1_gap = 0.0;
    /// | |Γ₋₋|p₋ − |Γ₊₊|p₊ |
    double relation2_gap = 0.0;
    /// Distance of τ(2μ + V₊ + V₋)/ħ − (π + (Σ − Λ)/ħ) from 2πℤ.
    double global_phase_gap = 0.0;
    double frobenius_uu = 0.0;  ///< ‖UU† − I‖_F
    double frobenius_uh = 0.0;  ///< ‖U†U − I‖_F
};

UnitarityReport unitarity_residuals(const PropagatorModel& m);

/// Distance of x from 2πℤ, in [0, π].
double distance_mod_2pi(double x);

struct SolveResult {
    bool feasible = false;
    /// Closed-form model when feasible, otherwise the best least-squares model found.
    PropagatorModel model;
    /// max_residual of `model`'s unitarity report.
    double min_residual = 0.0;
    std::string diagnostic;
};

struct SolveOptions {
    double feasible_tolerance = 1e-10;
    std::size_t starts = 32;
    std::size_t max_iterations = 200;
    unsigned seed = 20240611;
};

/// Constructs unitary vertex coefficients for fixed Lagrangian, bias, τ, ħ, Λ, Σ.
///
/// Closed form: Γ₊₋ = gauge, Γ₋₊ = gauge·e^{2δτ/ħ}·e^{iΛ/ħ}, Γ₊₊ = +sqrt((1 − gauge²p₊p₋e^{2δτ/ħ})/p₊²),
/// Γ₋₋ = Γ₊₊(p₊/p₋)e^{iΣ/ħ}. The result is feasible when that model has max residual
/// ≤ options.feasible_tolerance; otherwise a multi-start Levenberg–Marquardt search over Γ
/// (with the gauge, Λ and Σ relations and real positive Γ₊₊ imposed as penalties)
/// reports the smallest residual it reaches.
/// Throws ValidationError unless 0 < p ≤ 1/2 and gauge > 0.
SolveResult solve_unitary_gammas(const PropagatorModel& base, double gauge, const SolveOptions& options = {});

struct ScanPoint {
    double mu_tau_over_hbar = 0.0;
    double mu = 0.0;
    bool feasible = false;
    double min_residual = 0.0;
    VertexCoefficients gamma;
};

/// Runs solve_unitary_gammas for μτ/ħ = from + k·(to − from)/(points − 1), k = 0 … points − 1.
/// Throws ValidationError when points < 2.
std::vector<ScanPoint> quantization_scan(const PropagatorModel& base, double gauge, double from, double to,
                                         std::size_t points, const SolveOptions& options = {});

enum class SignCase { I, II, III, IV };

/// Closed-form eigenvalues of the four sign configurations:
/// I {A+B, A−B}, II {A+iB, A−iB}, III ±√(A²+B²), IV ±√(A²−B²).
std::pair<Complex, Complex> special_case_spectrum(Complex a, Complex b, SignCase c);

/// The matrix whose spectrum special_case_spectrum describes:
/// I [[A,B],[B,A]], II [[A,B],[−B,A]], III [[A,B],[B,−A]], IV [[A,B],[−B,−A]].
Eigen::Matrix2cd special_case_matrix(Complex a, Complex b, SignCase c);

/// λ± = ½(Γ ± Γ′e^{iμτ/ħ}) for U = ½[[Γ, Γ′e^{iμτ/ħ}], [Γ′e^{iμτ/ħ}, Γ]].
std::pair<Complex, Complex> uniform_free_spectrum(Complex gamma, Complex gamma_prime, double mu, double tau,
                                                  double hbar);

/// U^N by repeated squaring; U⁰ = I.
Eigen::MatrixXcd power_propagator(const Eigen::MatrixXcd& u, std::size_t n);

/// U^N|ψ⟩. Throws ValidationError for a zero or mis-sized vector.
StateVector evolve_state(const Eigen::MatrixXcd& u, const StateVector& psi, std::size_t n);

}  // namespace qgroupoid
