#include <catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "qgroupoid/error.hpp"
#include "qgroupoid/path_sum.hpp"
#include "qgroupoid/qubit_propagator.hpp"

using namespace qgroupoid;

namespace {

const double kPi = std::acos(-1.0);
const double kRoot2 = std::sqrt(2.0);
const Complex kI(0.0, 1.0);

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

PropagatorModel half_pi_model() {
    PropagatorModel m;
    m.mu = kPi / 2.0;
    m.gamma = {kRoot2, kRoot2, kRoot2, kRoot2};
    return m;
}

// matches {x, y} against {u, v} in either order
bool same_pair(std::pair<Complex, Complex> a, std::pair<Complex, Complex> b, double tol) {
    const auto d = [](Complex x, Complex y) { return std::abs(x - y); };
    return (d(a.first, b.first) <= tol && d(a.second, b.second) <= tol) ||
           (d(a.first, b.second) <= tol && d(a.second, b.first) <= tol);
}

std::pair<Complex, Complex> eigenpair(const Eigen::Matrix2cd& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(m, false);
    return {solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

// a random model on which the phase constraint holds, with a gauge below the feasibility bound
PropagatorModel random_feasible_base(std::mt19937_64& rng, double& gauge) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PropagatorModel m;
    m.delta = 0.5 * u(rng);
    m.v_plus = 2.0 * u(rng);
    m.v_minus = 2.0 * u(rng);
    m.p = 0.05 + 0.45 * (0.5 + 0.5 * u(rng));
    m.tau = 0.2 + (0.5 + 0.5 * u(rng));
    m.hbar = 0.5 + (0.5 + 0.5 * u(rng));
    m.lambda = u(rng);
    m.sigma = u(rng);
    m.mu = (m.hbar * kPi + (m.sigma - m.lambda)) / (2.0 * m.tau) - 0.5 * (m.v_plus + m.v_minus);
    const double bound = 1.0 / std::sqrt(m.p_plus() * m.p_minus() * std::exp(2.0 * m.delta * m.tau / m.hbar));
    gauge = bound * (0.1 + 0.8 * (0.5 + 0.5 * u(rng)));
    return m;
}

}  // namespace

TEST_CASE("propagator entries") {
    PropagatorModel m;
    const Eigen::Matrix2cd u = qubit_propagator(m);
    CHECK(u == Eigen::Matrix2cd::Constant(0.5));

    Eigen::Matrix2cd expected;
    expected << 1.0, kI, kI, 1.0;
    expected /= kRoot2;
    CHECK(max_diff(qubit_propagator(half_pi_model()), expected) <= 1e-15);

    PropagatorModel biased;
    biased.p = 0.2;
    biased.gamma = {Complex(2, 1), Complex(0, 3), Complex(-1, 0), Complex(0.5, 0.5)};
    Eigen::Matrix2cd weights;
    weights << Complex(2, 1) * 0.8, Complex(0, 3) * 0.4, Complex(-1, 0) * 0.4, Complex(0.5, 0.5) * 0.2;
    CHECK(max_diff(qubit_propagator(biased), weights) <= 1e-15);

    // entry oracle with every parameter switched on
    PropagatorModel full;
    full.v_plus = 0.3;
    full.v_minus = -0.4;
    full.mu = 0.9;
    full.delta = 0.2;
    full.p = 0.35;
    full.tau = 0.7;
    full.hbar = 1.3;
    full.gamma = {Complex(1, 2), Complex(3, -1), Complex(0.5, 0.5), Complex(-2, 1)};
    const double r = full.tau / full.hbar;
    const double pm = 0.65;
    const double pp = 0.35;
    Eigen::Matrix2cd oracle;
    oracle << full.gamma.mm * pm * std::exp(-kI * r * full.v_minus),
        full.gamma.mp * std::sqrt(pm * pp) * std::exp(r * Complex(-full.delta, full.mu)),
        full.gamma.pm * std::sqrt(pm * pp) * std::exp(r * Complex(full.delta, full.mu)),
        full.gamma.pp * pp * std::exp(-kI * r * full.v_plus);
    CHECK(max_diff(qubit_propagator(full), oracle) <= 1e-14);
}

TEST_CASE("model validation") {
    PropagatorModel m;
    m.p = 0.6;
    CHECK_THROWS_AS(qubit_propagator(m), ValidationError);
    m.p = 0.5;
    m.tau = 0.0;
    CHECK_THROWS_AS(qubit_propagator(m), ValidationError);
    m.tau = 1.0;
    m.hbar = -1.0;
    CHECK_THROWS_AS(qubit_propagator(m), ValidationError);
    m.hbar = 1.0;
    m.mu = std::nan("");
    CHECK_THROWS_AS(qubit_propagator(m), ValidationError);
    m.mu = 0.0;
    m.p = 0.0;
    CHECK_NOTHROW(qubit_propagator(m));
}

TEST_CASE("unitarity residuals") {
    const auto unitary = unitarity_residuals(half_pi_model());
    CHECK(unitary.max_residual <= 1e-12);
    CHECK(unitary.frobenius_uu <= 1e-12);
    CHECK(unitary.relation1_gap <= 1e-15);
    CHECK(unitary.relation2_gap <= 1e-15);
    CHECK(unitary.global_phase_gap <= 1e-15);

    const auto trivial = unitarity_residuals(PropagatorModel{});
    CHECK(std::abs(trivial.frobenius_uu - 1.0) <= 1e-15);
    CHECK(std::abs(trivial.frobenius_uh - 1.0) <= 1e-15);
    CHECK(std::abs(trivial.max_residual - 0.5) <= 1e-15);
    CHECK(std::abs(trivial.global_phase_gap - kPi) <= 1e-15);

    PropagatorModel off;
    off.gamma.pm = 0.0;
    CHECK(std::isinf(unitarity_residuals(off).relation1_gap));
}

TEST_CASE("residuals are entrywise defects of UU† and U†U", "[property]") {
    std::mt19937_64 rng(51);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 200; ++trial) {
        PropagatorModel m;
        m.v_plus = n(rng);
        m.v_minus = n(rng);
        m.mu = n(rng);
        m.delta = 0.3 * n(rng);
        m.p = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
        m.gamma = {Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng))};
        const Eigen::Matrix2cd u = qubit_propagator(m);
        const Eigen::Matrix2cd uu = u * u.adjoint() - Eigen::Matrix2cd::Identity();
        const Eigen::Matrix2cd uh = u.adjoint() * u - Eigen::Matrix2cd::Identity();
        const auto r = unitarity_residuals(m);
        CHECK(std::abs(r.max_residual - std::max(uu.cwiseAbs().maxCoeff(), uh.cwiseAbs().maxCoeff())) <= 1e-14);
        for (double x : r.residuals) CHECK(x >= 0.0);
        CHECK(std::abs(r.frobenius_uu - uu.norm()) <= 1e-14);
        CHECK(std::abs(r.relation2_gap - std::abs(std::abs(m.gamma.mm) * m.p_minus() - std::abs(m.gamma.pp) * m.p)) <=
              1e-14);
    }
}

TEST_CASE("unit vertex coefficients reproduce the one-step path sum exactly", "[property]") {
    std::mt19937_64 rng(52);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 200; ++trial) {
        PropagatorModel m;
        m.v_plus = n(rng);
        m.v_minus = n(rng);
        m.mu = n(rng);
        m.delta = 0.5 * n(rng);
        m.p = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
        m.tau = 0.1 + std::abs(n(rng));
        m.hbar = 0.1 + std::abs(n(rng));
        const Eigen::MatrixXcd u = qubit_propagator(m);
        CHECK(u == n_step_path_sum(m.lagrangian(), OutcomeBias::qubit(m.p), m.tau, m.hbar, 1));
    }
}

TEST_CASE("solver closed form") {
    PropagatorModel base;
    base.mu = kPi / 2.0;
    const auto r = solve_unitary_gammas(base, kRoot2);
    REQUIRE(r.feasible);
    for (Complex g : {r.model.gamma.mm, r.model.gamma.mp, r.model.gamma.pm, r.model.gamma.pp})
        CHECK(std::abs(g - kRoot2) <= 1e-15);
    CHECK(r.min_residual <= 1e-12);

    PropagatorModel skew;
    skew.delta = 0.3;
    skew.mu = kPi;
    skew.p = 0.3;
    skew.tau = 0.5;
    const auto s = solve_unitary_gammas(skew, 0.7);
    REQUIRE(s.feasible);
    CHECK(std::abs(s.model.gamma.mp) / std::abs(s.model.gamma.pm) == std::exp(2.0 * 0.3 * 0.5));

    PropagatorModel degenerate;
    degenerate.p = 0.0;
    CHECK_THROWS_AS(solve_unitary_gammas(degenerate, 1.0), ValidationError);
    CHECK_THROWS_AS(solve_unitary_gammas(base, 0.0), ValidationError);
}

TEST_CASE("solver certifies infeasibility") {
    PropagatorModel base;
    base.mu = kPi / 4.0;
    const auto r = solve_unitary_gammas(base, kRoot2);
    CHECK_FALSE(r.feasible);
    CHECK(r.min_residual > 1e-3);
    CHECK_FALSE(r.diagnostic.empty());

    PropagatorModel too_big;
    too_big.mu = kPi / 2.0;
    CHECK_FALSE(solve_unitary_gammas(too_big, 3.0).feasible);
}

TEST_CASE("solver is deterministic") {
    PropagatorModel base;
    base.mu = 0.3;
    const auto a = solve_unitary_gammas(base, 1.0);
    const auto b = solve_unitary_gammas(base, 1.0);
    CHECK(a.min_residual == b.min_residual);
    CHECK(a.model.gamma.mm == b.model.gamma.mm);
    CHECK(a.model.gamma.pp == b.model.gamma.pp);
}

TEST_CASE("feasible models satisfy every relation", "[property]") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        double gauge = 0.0;
        const auto base = random_feasible_base(rng, gauge);
        const auto r = solve_unitary_gammas(base, gauge);
        REQUIRE(r.feasible);
        const auto report = unitarity_residuals(r.model);
        CHECK(report.max_residual <= 1e-10);
        CHECK(report.relation1_gap <= 1e-12);
        CHECK(report.relation2_gap <= 1e-12);
        CHECK(report.global_phase_gap <= 1e-10);
    }
}

TEST_CASE("quantization scan") {
    PropagatorModel base;
    const auto scan = quantization_scan(base, 1.0, 0.0, 2.0 * kPi, 9);
    REQUIRE(scan.size() == 9);
    std::vector<int> feasible;
    for (std::size_t k = 0; k < scan.size(); ++k)
        if (scan[k].feasible) feasible.push_back(static_cast<int>(k));
    CHECK(feasible == std::vector<int>{2, 6});
    CHECK(scan[2].mu_tau_over_hbar == kPi / 2.0);

    // V₊ = V₋ = v moves the feasible μ by −v
    base.v_plus = base.v_minus = 0.25;
    base.tau = 2.0;
    const auto shifted = quantization_scan(base, 1.0, kPi / 2.0 - 0.5, 5.0 * kPi / 2.0 - 0.5, 5);
    CHECK(shifted[0].feasible);
    CHECK(std::abs(shifted[0].mu - (kPi / 4.0 - 0.25)) <= 1e-15);
    CHECK_FALSE(shifted[1].feasible);
    CHECK(shifted[2].feasible);
    CHECK(shifted[4].feasible);

    CHECK_THROWS_AS(quantization_scan(PropagatorModel{}, 1.0, 0.0, 1.0, 1), ValidationError);
}

TEST_CASE("four sign cases") {
    CHECK(same_pair(special_case_spectrum(3.0, 4.0, SignCase::I), {7.0, -1.0}, 1e-15));
    CHECK(same_pair(special_case_spectrum(3.0, 4.0, SignCase::III), {5.0, -5.0}, 1e-15));
    CHECK(same_pair(special_case_spectrum(3.0, 4.0, SignCase::IV), {kI * std::sqrt(7.0), -kI * std::sqrt(7.0)}, 1e-15));

    std::mt19937_64 rng(54);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 100; ++trial) {
        const Complex a(n(rng), n(rng));
        const Complex b(n(rng), n(rng));
        for (auto c : {SignCase::I, SignCase::II, SignCase::III, SignCase::IV})
            CHECK(same_pair(special_case_spectrum(a, b, c), eigenpair(special_case_matrix(a, b, c)), 1e-12));
    }
}

TEST_CASE("uniform free spectrum") {
    const auto [l1, l2] = uniform_free_spectrum(kRoot2, kRoot2, kPi / 2.0, 1.0, 1.0);
    CHECK(same_pair({l1, l2}, {Complex(1, 1) / kRoot2, Complex(1, -1) / kRoot2}, 1e-15));
    CHECK(std::abs(std::abs(l1) - 1.0) <= 1e-15);
    CHECK(same_pair(uniform_free_spectrum(Complex(0.4, 1), 0.0, 0.7, 1.0, 1.0), {Complex(0.2, 0.5), Complex(0.2, 0.5)},
                    1e-15));
    CHECK(same_pair(uniform_free_spectrum(2.0, 2.0, 0.0, 1.0, 1.0), {2.0, 0.0}, 1e-15));

    std::mt19937_64 rng(55);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 50; ++trial) {
        const Complex g(n(rng), n(rng));
        const Complex gp(n(rng), n(rng));
        const double mu = n(rng);
        const double tau = 0.5 + std::abs(n(rng));
        const double hbar = 0.5 + std::abs(n(rng));
        const Complex off = gp * std::exp(kI * mu * tau / hbar);
        Eigen::Matrix2cd u;
        u << g, off, off, g;
        u *= 0.5;
        CHECK(same_pair(uniform_free_spectrum(g, gp, mu, tau, hbar), eigenpair(u), 1e-12));
    }
}

TEST_CASE("powers and evolution") {
    const Eigen::Matrix2cd u = qubit_propagator(half_pi_model());
    CHECK(power_propagator(u, 0) == Eigen::MatrixXcd::Identity(2, 2));
    Eigen::Matrix2cd flip;
    flip << 0.0, kI, kI, 0.0;
    CHECK(max_diff(power_propagator(u, 2), flip) <= 1e-15);
    for (std::size_t n1 : {0, 1, 3, 7})
        for (std::size_t n2 : {0, 2, 5})
            CHECK(max_diff(power_propagator(u, n1 + n2), power_propagator(u, n1) * power_propagator(u, n2)) <= 1e-12);

    // a rounded U carries a defect near 1e-16 that grows linearly with N
    const double defect = (u * u.adjoint() - Eigen::Matrix2cd::Identity()).norm();
    const Eigen::MatrixXcd mid = power_propagator(u, 100'000);
    CHECK((mid * mid.adjoint() - Eigen::MatrixXcd::Identity(2, 2)).norm() <= 1e-10);
    const Eigen::MatrixXcd big = power_propagator(u, 1'000'000);
    CHECK((big * big.adjoint() - Eigen::MatrixXcd::Identity(2, 2)).norm() <= 1e-10 + 4e6 * defect);
    Eigen::Matrix2cd exact;
    exact << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5);
    const Eigen::MatrixXcd exact_big = power_propagator(exact, 1'000'001);
    CHECK((exact_big * exact_big.adjoint() - Eigen::MatrixXcd::Identity(2, 2)).norm() <= 1e-10);
    CHECK(exact_big == exact);

    StateVector minus{Eigen::VectorXcd(2)};
    minus.amplitudes << 1.0, 0.0;
    const auto out = evolve_state(u, minus, 2);
    CHECK(std::abs(out.amplitudes(0)) <= 1e-15);
    CHECK(std::abs(out.amplitudes(1) - kI) <= 1e-15);

    StateVector psi{Eigen::VectorXcd(2)};
    psi.amplitudes << Complex(0.3, -0.2), Complex(1.1, 0.4);
    CHECK(evolve_state(Eigen::MatrixXcd::Identity(2, 2), psi, 5).amplitudes == psi.amplitudes);
    CHECK(std::abs(evolve_state(u, psi, 77).amplitudes.norm() - psi.amplitudes.norm()) <= 1e-10);

    CHECK_THROWS_AS(evolve_state(u, StateVector{Eigen::VectorXcd::Zero(2)}, 1), ValidationError);
    CHECK_THROWS_AS(evolve_state(u, StateVector{Eigen::VectorXcd::Ones(3)}, 1), ValidationError);
}
