#include "commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>

#include "qgroupoid/coarse_grain.hpp"
#include "qgroupoid/groupoid_io.hpp"
#include "qgroupoid/path_sum.hpp"

namespace qgroupoid::cli {

namespace {

std::string num(double x) { return fmt::format("{:.17g}", x); }

bool is_a2(const FiniteGroupoid& g) { return g == *build_a2(); }

void write_matrix(std::ostream& out, const FiniteGroupoid& g, const Eigen::MatrixXcd& m) {
    out << "row,column,re,im\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            fmt::print(out, "{},{},{},{}\n", g.outcome_label(outcome_id(static_cast<std::size_t>(r))),
                       g.outcome_label(outcome_id(static_cast<std::size_t>(c))), num(m(r, c).real()),
                       num(m(r, c).imag()));
}

std::size_t step_count(const RunConfig& cfg, const CommandOptions& opt) { return opt.steps.value_or(cfg.steps); }

std::pair<std::size_t, std::size_t> parse_split(const std::string& spec) {
    const auto plus = spec.find('+');
    if (plus == std::string::npos) throw ParseError("--check-semigroup expects A+B, got '" + spec + "'");
    auto count = [&](std::string_view s) {
        const double v = parse_real(s);
        if (v < 1.0 || v != std::floor(v)) throw ParseError("--check-semigroup parts must be positive integers");
        return static_cast<std::size_t>(v);
    };
    return {count(std::string_view(spec).substr(0, plus)), count(std::string_view(spec).substr(plus + 1))};
}

StateVector parse_state(const std::string& spec, std::size_t dim) {
    std::vector<Complex> values;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= spec.size(); ++i) {
        if (i == spec.size() || spec[i] == ';') {
            values.push_back(parse_complex(std::string_view(spec).substr(begin, i - begin)));
            begin = i + 1;
        }
    }
    if (values.size() != dim)
        throw ValidationError("state has " + std::to_string(values.size()) + " amplitudes, expected " +
                              std::to_string(dim));
    StateVector psi{Eigen::VectorXcd(static_cast<Eigen::Index>(dim))};
    for (std::size_t k = 0; k < dim; ++k) psi.amplitudes(static_cast<Eigen::Index>(k)) = values[k];
    if (psi.amplitudes.squaredNorm() == 0.0) throw ValidationError("initial state must be nonzero");
    return psi;
}

void require_a2(const RunConfig& cfg, std::string_view command) {
    if (!is_a2(*resolve_groupoid(cfg))) throw ValidationError(std::string(command) + " command requires a2");
}

PropagatorModel base_model(const RunConfig& cfg) {
    PropagatorModel m;
    m.v_plus = cfg.v_plus;
    m.v_minus = cfg.v_minus;
    m.mu = cfg.mu;
    m.delta = cfg.delta;
    m.p = cfg.p_plus;
    m.tau = cfg.tau;
    m.hbar = cfg.hbar;
    m.lambda = cfg.lambda;
    m.sigma = cfg.sigma;
    return m;
}

}  // namespace

GroupoidPtr resolve_groupoid(const RunConfig& cfg) {
    if (cfg.groupoid == "a2") return build_a2();
    if (cfg.groupoid.rfind("pair:", 0) == 0) {
        const double n = parse_real(std::string_view(cfg.groupoid).substr(5));
        if (n < 1.0 || n != std::floor(n) || n > 64.0) throw ValidationError("pair:N needs an integer 1 <= N <= 64");
        return build_pair_groupoid(static_cast<std::size_t>(n));
    }
    std::filesystem::path path(cfg.groupoid);
    if (path.is_relative() && !cfg.base_dir.empty()) path = cfg.base_dir / path;
    return load_groupoid(path);
}

QLagrangian resolve_lagrangian(const RunConfig& cfg, const GroupoidPtr& g) {
    std::vector<Complex> values(g->element_count());
    if (!cfg.ell.empty()) {
        for (const auto& [name, value] : cfg.ell) values[index(g->element(name))] = value;
        return QLagrangian(g, std::move(values));
    }
    if (is_a2(*g)) {
        const auto q = qubit_lagrangian(cfg.v_plus, cfg.v_minus, cfg.mu, cfg.delta);
        for (std::size_t i = 0; i < g->element_count(); ++i)
            values[i] = q.at(g->element_label(element_id(i)));
        return QLagrangian(g, std::move(values));
    }
    if (cfg.v_plus != 0.0 || cfg.v_minus != 0.0 || cfg.mu != 0.0 || cfg.delta != 0.0)
        throw ValidationError("V_plus, V_minus, mu and delta describe the a2 Lagrangian; use ell entries here");
    return QLagrangian::zero(g);
}

OutcomeBias resolve_bias(const RunConfig& cfg, const GroupoidPtr& g) {
    if (cfg.bias) return OutcomeBias(g, *cfg.bias);
    if (is_a2(*g)) {
        std::vector<double> p(2);
        p[index(g->outcome(a2::kPlus))] = cfg.p_plus;
        p[index(g->outcome(a2::kMinus))] = 1.0 - cfg.p_plus;
        return OutcomeBias(g, std::move(p));
    }
    return OutcomeBias::uniform(g);
}

PropagatorModel resolve_model(const RunConfig& cfg) {
    require_a2(cfg, "propagator");
    PropagatorModel m = base_model(cfg);
    switch (cfg.gamma_mode) {
        case GammaMode::unit:
            m.gamma = VertexCoefficients{};
            break;
        case GammaMode::given:
            m.gamma = cfg.gamma;
            break;
        case GammaMode::solve: {
            const SolveResult s = solve_unitary_gammas(m, cfg.gauge);
            if (!s.feasible)
                throw InfeasibleError("no unitary vertex coefficients: " + s.diagnostic +
                                      "; least-squares residual " + num(s.min_residual));
            m = s.model;
            break;
        }
    }
    m.validate();
    return m;
}

int cmd_validate(const RunConfig& cfg, const CommandOptions&, std::ostream& out) {
    const auto g = resolve_groupoid(cfg);
    out << "groupoid: " << cfg.groupoid << '\n';
    out << "outcomes: " << g->outcome_count() << '\n';
    out << "elements: " << g->element_count() << '\n';
    out << "axioms: ok\n";
    const auto ell = resolve_lagrangian(cfg, g);
    out << "lagrangian: self-adjoint, defect " << num(ell.self_adjoint_defect()) << '\n';
    const auto p = resolve_bias(cfg, g);
    out << "bias:";
    for (std::size_t a = 0; a < g->outcome_count(); ++a)
        out << ' ' << g->outcome_label(outcome_id(a)) << '=' << num(p(outcome_id(a)));
    out << '\n';
    return kOk;
}

int cmd_table(const RunConfig& cfg, const CommandOptions&, std::ostream& out) {
    out << render_table(*resolve_groupoid(cfg));
    return kOk;
}

int cmd_propagator(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    const auto g = build_a2();
    const PropagatorModel m = resolve_model(cfg);
    const Eigen::Matrix2cd u = qubit_propagator(m);
    write_matrix(out, *g, u);

    out << "\ngamma,re,im\n";
    for (const auto& [name, value] :
         {std::pair{"mm", m.gamma.mm}, std::pair{"mp", m.gamma.mp}, std::pair{"pm", m.gamma.pm},
          std::pair{"pp", m.gamma.pp}})
        fmt::print(out, "{},{},{}\n", name, num(value.real()), num(value.imag()));

    const UnitarityReport r = unitarity_residuals(m);
    static constexpr const char* kNames[8] = {"uu_mm", "uu_pm", "uu_mp", "uu_pp", "uh_mm", "uh_mp", "uh_pm", "uh_pp"};
    out << "\nresidual,value\n";
    for (std::size_t k = 0; k < r.residuals.size(); ++k) fmt::print(out, "{},{}\n", kNames[k], num(r.residuals[k]));
    fmt::print(out, "max_residual,{}\n", num(r.max_residual));
    fmt::print(out, "relation1_gap,{}\n", num(r.relation1_gap));
    fmt::print(out, "relation2_gap,{}\n", num(r.relation2_gap));
    fmt::print(out, "global_phase_gap,{}\n", num(r.global_phase_gap));
    fmt::print(out, "frobenius_uu,{}\n", num(r.frobenius_uu));
    fmt::print(out, "frobenius_uh,{}\n", num(r.frobenius_uh));

    if (opt.power) {
        fmt::print(out, "\npower,{}\n", *opt.power);
        write_matrix(out, *g, power_propagator(u, *opt.power));
    }
    return kOk;
}

int cmd_pathsum(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    const auto g = resolve_groupoid(cfg);
    const auto ell = resolve_lagrangian(cfg, g);
    const auto p = resolve_bias(cfg, g);
    const std::size_t n = step_count(cfg, opt);
    const auto split_at = opt.check_semigroup ? std::optional(parse_split(*opt.check_semigroup)) : std::nullopt;
    write_matrix(out, *g, n_step_path_sum(ell, p, cfg.tau, cfg.hbar, n));

    if (split_at) {
        const auto [n1, n2] = *split_at;
        const Eigen::MatrixXcd whole = n_step_path_sum(ell, p, cfg.tau, cfg.hbar, n1 + n2);
        const Eigen::MatrixXcd split =
            n_step_path_sum(ell, p, cfg.tau, cfg.hbar, n2) * n_step_path_sum(ell, p, cfg.tau, cfg.hbar, n1);
        const double deviation = (whole - split).cwiseAbs().maxCoeff();
        fmt::print(out, "\nsemigroup,{},{},{}\n", n1, n2, num(deviation));
        if (!(deviation <= 1e-12)) return kInvalid;
    }
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, const CommandOptions&, std::ostream& out) {
    if (!cfg.sweep) throw ValidationError("sweep command needs a sweep = PARAM, FROM, TO, POINTS line");
    require_a2(cfg, "sweep");
    const SweepSpec& s = *cfg.sweep;
    const double scale = s.parameter == "mu" ? cfg.tau / cfg.hbar : 1.0;
    const auto points = quantization_scan(base_model(cfg), cfg.gauge, s.from * scale, s.to * scale, s.points);
    out << "mu_tau_over_hbar,feasible,min_residual,gamma_mm_re,gamma_mm_im,gamma_pm_re,gamma_pm_im,"
           "gamma_mp_re,gamma_mp_im,gamma_pp_re,gamma_pp_im\n";
    for (const auto& pt : points) {
        fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{}\n", num(pt.mu_tau_over_hbar), pt.feasible ? 1 : 0,
                   num(pt.min_residual), num(pt.gamma.mm.real()), num(pt.gamma.mm.imag()), num(pt.gamma.pm.real()),
                   num(pt.gamma.pm.imag()), num(pt.gamma.mp.real()), num(pt.gamma.mp.imag()),
                   num(pt.gamma.pp.real()), num(pt.gamma.pp.imag()));
    }
    return kOk;
}

int cmd_evolve(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    if (!opt.state) throw ValidationError("evolve needs --state re,im;re,im");
    const auto g = build_a2();
    const PropagatorModel m = resolve_model(cfg);
    const StateVector psi = parse_state(*opt.state, 2);
    const StateVector final_state = evolve_state(qubit_propagator(m), psi, step_count(cfg, opt));
    out << "outcome,re,im\n";
    for (Eigen::Index k = 0; k < 2; ++k)
        fmt::print(out, "{},{},{}\n", g->outcome_label(outcome_id(static_cast<std::size_t>(k))),
                   num(final_state.amplitudes(k).real()), num(final_state.amplitudes(k).imag()));
    fmt::print(out, "norm,{}\n", num(final_state.amplitudes.norm()));
    return kOk;
}

int cmd_coarse_grain(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out) {
    if (!opt.partition) throw ValidationError("coarse-grain needs --partition x1,x2|x3,x4");
    const auto g = resolve_groupoid(cfg);
    if (!g->is_pair_groupoid()) throw ValidationError("coarse-grain requires a pair groupoid");
    const auto ell = resolve_lagrangian(cfg, g);
    const auto partition = OutcomePartition::parse(*g, *opt.partition);
    const CoarseGrained q = coarse_grain(g, partition, ell);

    out << render_table(*q.groupoid);
    out << "\nelement,re,im\n";
    for (std::size_t i = 0; i < q.groupoid->element_count(); ++i) {
        const Complex v = q.lagrangian.values()[i];
        fmt::print(out, "{},{},{}\n", q.groupoid->element_label(element_id(i)), num(v.real()), num(v.imag()));
    }
    fmt::print(out, "self_adjoint_defect,{}\n", num(q.lagrangian.self_adjoint_defect()));
    for (std::size_t b = 0; b < partition.size() && partition.size() != g->outcome_count(); ++b) {
        out << (b == 0 ? "\nblock,outcomes\n" : "") << 'B' << b + 1 << ',';
        const auto& block = partition.blocks()[b];
        for (std::size_t k = 0; k < block.size(); ++k) out << (k ? " " : "") << block[k];
        out << '\n';
    }
    return kOk;
}

int run_command(std::string_view name, const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
                std::ostream& err) {
    try {
        if (name == "validate") return cmd_validate(cfg, opt, out);
        if (name == "table") return cmd_table(cfg, opt, out);
        if (name == "propagator") return cmd_propagator(cfg, opt, out);
        if (name == "pathsum") return cmd_pathsum(cfg, opt, out);
        if (name == "sweep") return cmd_sweep(cfg, opt, out);
        if (name == "evolve") return cmd_evolve(cfg, opt, out);
        if (name == "coarse-grain") return cmd_coarse_grain(cfg, opt, out);
        err << "error: unknown command " << name << '\n';
        return kInvalid;
    } catch (const CapExceededError& e) {
        err << "error: " << e.what() << '\n';
        return kUnavailable;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        return kUnavailable;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
}

}  // namespace qgroupoid::cli
