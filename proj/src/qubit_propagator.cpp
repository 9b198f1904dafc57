#include "qgroupoid/qubit_propagator.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qgroupoid/error.hpp"
#include "qgroupoid/path_sum.hpp"

namespace qgroupoid {

namespace {

constexpr Eigen::Index kM = 0;  // row/column of outcome −
constexpr Eigen::Index kP = 1;  // row/column of outcome +

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

void PropagatorModel::validate() const {
    for (double v : {v_plus, v_minus, mu, delta, p, tau, hbar, lambda, sigma})
        if (!std::isfinite(v)) throw ValidationError("propagator parameters must be finite");
    for (Complex c : {gamma.mm, gamma.mp, gamma.pm, gamma.pp})
        if (!finite(c)) throw ValidationError("vertex coefficients must be finite");
    if (!(tau > 0.0)) throw ValidationError("tau must be positive");
    if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
    if (!(p >= 0.0 && p <= 0.5)) throw ValidationError("p_plus must lie in [0, 1/2]");
}

Eigen::Matrix2cd qubit_propagator(const PropagatorModel& m) {
    m.validate();
    const double pp = m.p_plus();
    const double pm = m.p_minus();
    Eigen::Matrix2cd u;
    u(kM, kM) = m.gamma.mm * step_amplitude(pm, pm, Complex(-m.v_minus, 0.0), m.tau, m.hbar);
    u(kM, kP) = m.gamma.mp * step_amplitude(pp, pm, Complex(m.mu, m.delta), m.tau, m.hbar);
    u(kP, kM) = m.gamma.pm * step_amplitude(pm, pp, Complex(m.mu, -m.delta), m.tau, m.hbar);
    u(kP, kP) = m.gamma.pp * step_amplitude(pp, pp, Complex(-m.v_plus, 0.0), m.tau, m.hbar);
    return u;
}

double distance_mod_2pi(double x) { return std::abs(std::remainder(x, 2.0 * std::numbers::pi)); }

UnitarityReport unitarity_residuals(const PropagatorModel& m) {
    const Eigen::Matrix2cd u = qubit_propagator(m);
    const Eigen::Matrix2cd uu = u * u.adjoint() - Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd uh = u.adjoint() * u - Eigen::Matrix2cd::Identity();

    UnitarityReport r;
    r.residuals = {std::abs(uu(kM, kM)), std::abs(uu(kP, kM)), std::abs(uu(kM, kP)), std::abs(uu(kP, kP)),
                   std::abs(uh(kM, kM)), std::abs(uh(kM, kP)), std::abs(uh(kP, kM)), std::abs(uh(kP, kP))};
    for (double v : r.residuals) r.max_residual = std::max(r.max_residual, v);

    const double growth = std::exp(2.0 * m.tau * m.delta / m.hbar);
    r.relation1_gap = std::abs(m.gamma.pm) == 0.0
                          ? std::numeric_limits<double>::infinity()
                          : std::abs(std::abs(m.gamma.mp) / std::abs(m.gamma.pm) - growth);
    r.relation2_gap = std::abs(std::abs(m.gamma.mm) * m.p_minus() - std::abs(m.gamma.pp) * m.p_plus());
    r.global_phase_gap = distance_mod_2pi(m.tau * (2.0 * m.mu + m.v_plus + m.v_minus) / m.hbar - std::numbers::pi -
                                          (m.sigma - m.lambda) / m.hbar);
    r.frobenius_uu = uu.norm();
    r.frobenius_uh = uh.norm();
    return r;
}

std::pair<Complex, Complex> special_case_spectrum(Complex a, Complex b, SignCase c) {
    const Complex i(0.0, 1.0);
    switch (c) {
        case SignCase::I:
            return {a + b, a - b};
        case SignCase::II:
            return {a + i * b, a - i * b};
        case SignCase::III: {
            const Complex r = std::sqrt(a * a + b * b);
            return {r, -r};
        }
        case SignCase::IV: {
            const Complex r = std::sqrt(a * a - b * b);
            return {r, -r};
        }
    }
    throw ValidationError("unknown sign case");
}

Eigen::Matrix2cd special_case_matrix(Complex a, Complex b, SignCase c) {
    const double lower = (c == SignCase::I || c == SignCase::III) ? 1.0 : -1.0;
    const double diag = (c == SignCase::I || c == SignCase::II) ? 1.0 : -1.0;
    Eigen::Matrix2cd m;
    m << a, b, lower * b, diag * a;
    return m;
}

std::pair<Complex, Complex> uniform_free_spectrum(Complex gamma, Complex gamma_prime, double mu, double tau,
                                                  double hbar) {
    const Complex off = gamma_prime * std::polar(1.0, mu * tau / hbar);
    return {0.5 * (gamma + off), 0.5 * (gamma - off)};
}

Eigen::MatrixXcd power_propagator(const Eigen::MatrixXcd& u, std::size_t n) {
    if (u.rows() != u.cols()) throw ValidationError("propagator must be square");
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    Eigen::MatrixXcd base = u;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

StateVector evolve_state(const Eigen::MatrixXcd& u, const StateVector& psi, std::size_t n) {
    if (psi.amplitudes.size() != u.cols()) throw ValidationError("state dimension does not match the propagator");
    if (psi.amplitudes.squaredNorm() == 0.0) throw ValidationError("initial state must be nonzero");
    return StateVector{power_propagator(u, n) * psi.amplitudes};
}

}  // namespace qgroupoid
