#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qgroupoid/error.hpp"
#include "qgroupoid/qubit_propagator.hpp"

namespace qgroupoid {

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;

// x = (Re, Im) of Γ₋₋, Γ₋₊, Γ₊₋, Γ₊₊
VertexCoefficients unpack(const Vec8& x) {
    return {Complex(x(0), x(1)), Complex(x(2), x(3)), Complex(x(4), x(5)), Complex(x(6), x(7))};
}

Vec8 pack(const VertexCoefficients& g) {
    Vec8 x;
    x << g.mm.real(), g.mm.imag(), g.mp.real(), g.mp.imag(), g.pm.real(), g.pm.imag(), g.pp.real(), g.pp.imag();
    return x;
}

class Objective {
public:
    // U is Γ times a fixed weight entrywise, so the weights are computed once
    Objective(const PropagatorModel& base, double gauge)
        : gauge_(gauge),
          lambda_factor_(std::exp(2.0 * base.delta * base.tau / base.hbar) * std::polar(1.0, base.lambda / base.hbar)),
          sigma_factor_(base.p_plus() * std::polar(1.0, base.sigma / base.hbar)),
          p_minus_(base.p_minus()) {
        PropagatorModel unit = base;
        unit.gamma = VertexCoefficients{};
        weights_ = qubit_propagator(unit);
    }

    static constexpr int kSize = 23;

    // unitarity entries, then the gauge, Λ, Σ and real-Γ₊₊ constraints
    Eigen::Matrix<double, kSize, 1> operator()(const Vec8& x) const {
        const VertexCoefficients g = unpack(x);
        Eigen::Matrix2cd gamma;
        gamma << g.mm, g.mp, g.pm, g.pp;
        const Eigen::Matrix2cd u = gamma.cwiseProduct(weights_);
        const Eigen::Matrix2cd uu = u * u.adjoint() - Eigen::Matrix2cd::Identity();
        const Eigen::Matrix2cd uh = u.adjoint() * u - Eigen::Matrix2cd::Identity();
        const Complex lambda_gap = g.mp - g.pm * lambda_factor_;
        const Complex sigma_gap = g.mm * p_minus_ - g.pp * sigma_factor_;

        Eigen::Matrix<double, kSize, 1> r;
        r << uu.real().reshaped(), uu.imag().reshaped(), uh.real().reshaped(), uh.imag().reshaped(),
            g.pm.real() - gauge_, g.pm.imag(), lambda_gap.real(), lambda_gap.imag(), sigma_gap.real(),
            sigma_gap.imag(), g.pp.imag();
        return r;
    }

private:
    double gauge_;
    Complex lambda_factor_;
    Complex sigma_factor_;
    double p_minus_;
    Eigen::Matrix2cd weights_;
};

struct Box {
    Vec8 lo;
    Vec8 hi;

    Vec8 clamp(const Vec8& x) const { return x.cwiseMax(lo).cwiseMin(hi); }
};

struct Minimum {
    Vec8 x;
    double worst = std::numeric_limits<double>::infinity();
};

Minimum levenberg_marquardt(const Objective& f, const Box& box, Vec8 x, std::size_t max_iterations) {
    using Residual = Eigen::Matrix<double, Objective::kSize, 1>;
    using Jacobian = Eigen::Matrix<double, Objective::kSize, 8>;

    x = box.clamp(x);
    Residual r = f(x);
    double cost = r.squaredNorm();
    Minimum best{x, r.cwiseAbs().maxCoeff()};
    double damping = 1e-3;

    for (std::size_t it = 0; it < max_iterations; ++it) {
        Jacobian j;
        for (int k = 0; k < 8; ++k) {
            const double h = 1e-7 * (1.0 + std::abs(x(k)));
            Vec8 xp = x;
            Vec8 xm = x;
            xp(k) += h;
            xm(k) -= h;
            j.col(k) = (f(xp) - f(xm)) / (2.0 * h);
        }
        const Eigen::Matrix<double, 8, 8> jtj = j.transpose() * j;
        const Vec8 grad = j.transpose() * r;
        if (grad.cwiseAbs().maxCoeff() < 1e-15) break;

        bool improved = false;
        for (int attempt = 0; attempt < 12 && !improved; ++attempt) {
            Eigen::Matrix<double, 8, 8> a = jtj;
            a.diagonal() += damping * (jtj.diagonal().array() + 1e-12).matrix();
            const Vec8 step = a.ldlt().solve(-grad);
            const Vec8 candidate = box.clamp(x + step);
            const Residual rc = f(candidate);
            const double cc = rc.squaredNorm();
            if (cc < cost) {
                const double gain = cost - cc;
                x = candidate;
                r = rc;
                cost = cc;
                damping = std::max(damping / 3.0, 1e-12);
                improved = true;
                const double worst = r.cwiseAbs().maxCoeff();
                if (worst < best.worst) best = {x, worst};
                if (gain < 1e-30) return best;
            } else {
                damping *= 4.0;
            }
        }
        if (!improved || best.worst < 1e-14) break;
    }
    return best;
}

}  // namespace

SolveResult solve_unitary_gammas(const PropagatorModel& base, double gauge, const SolveOptions& options) {
    base.validate();
    if (!(base.p > 0.0)) throw ValidationError("p_plus = 0 is a degenerate bias; solving needs 0 < p_plus <= 1/2");
    if (!(gauge > 0.0) || !std::isfinite(gauge)) throw ValidationError("gauge must be positive");

    const double pp = base.p_plus();
    const double pm = base.p_minus();
    const double growth = std::exp(2.0 * base.delta * base.tau / base.hbar);
    const double radicand = (1.0 - gauge * gauge * pp * pm * growth) / (pp * pp);

    SolveResult result;
    result.model = base;
    const double gamma_pp = std::sqrt(std::max(radicand, 0.0));
    result.model.gamma.pm = gauge;
    result.model.gamma.mp = gauge * growth * std::polar(1.0, base.lambda / base.hbar);
    result.model.gamma.pp = gamma_pp;
    result.model.gamma.mm = gamma_pp * (pp / pm) * std::polar(1.0, base.sigma / base.hbar);

    const UnitarityReport closed = unitarity_residuals(result.model);
    if (radicand >= 0.0 && closed.max_residual <= options.feasible_tolerance) {
        result.feasible = true;
        result.min_residual = closed.max_residual;
        return result;
    }
    result.diagnostic = radicand < 0.0 ? "|gamma_pp|^2 would be negative for this gauge"
                                       : "phase constraint violated (gap " + std::to_string(closed.global_phase_gap) +
                                             " rad)";

    // least-squares certificate: how close can any admissible Γ get?
    const Objective f(base, gauge);
    const double spread = std::exp(std::abs(base.delta) * base.tau / base.hbar) / std::sqrt(pp * pm);
    const Vec8 bound = (Vec8() << 1.5 / pm, 1.5 / pm, 1.5 * spread, 1.5 * spread, 1.5 * spread, 1.5 * spread,
                        1.5 / pp, 1.5 / pp)
                           .finished()
                           .cwiseMax(Vec8::Constant(2.0 * gauge * std::max(growth, 1.0)));
    Box box{-bound, bound};
    box.lo(6) = 0.0;  // Γ₊₊ is the nonnegative root

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Minimum best{pack(result.model.gamma), std::numeric_limits<double>::infinity()};
    for (std::size_t s = 0; s < std::max<std::size_t>(options.starts, 1); ++s) {
        Vec8 x0 = pack(result.model.gamma);
        if (s > 0)
            for (int k = 0; k < 8; ++k) x0(k) = box.lo(k) + unit(rng) * (box.hi(k) - box.lo(k));
        const Minimum m = levenberg_marquardt(f, box, x0, options.max_iterations);
        if (m.worst < best.worst) best = m;
    }

    PropagatorModel refined = base;
    refined.gamma = unpack(best.x);
    if (best.worst <= options.feasible_tolerance && unitarity_residuals(refined).max_residual <= options.feasible_tolerance) {
        result.feasible = true;
        result.model = refined;
        result.min_residual = unitarity_residuals(refined).max_residual;
        result.diagnostic.clear();
        return result;
    }
    result.model = refined;
    result.min_residual = best.worst;
    return result;
}

std::vector<ScanPoint> quantization_scan(const PropagatorModel& base, double gauge, double from, double to,
                                         std::size_t points, const SolveOptions& options) {
    if (points < 2) throw ValidationError("a sweep needs at least 2 points");
    if (!std::isfinite(from) || !std::isfinite(to)) throw ValidationError("sweep bounds must be finite");
    std::vector<ScanPoint> out;
    out.reserve(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double x = from + (to - from) * static_cast<double>(k) / static_cast<double>(points - 1);
        PropagatorModel m = base;
        m.mu = x * base.hbar / base.tau;
        const SolveResult s = solve_unitary_gammas(m, gauge, options);
        out.push_back(ScanPoint{x, m.mu, s.feasible, s.min_residual, s.model.gamma});
    }
    return out;
}

}  // namespace qgroupoid
