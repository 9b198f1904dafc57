#include "qgroupoid/path_sum.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qgroupoid/error.hpp"

namespace qgroupoid {

namespace {

// paths[k][x] = number of k-step paths from x to a_f
std::vector<std::vector<double>> paths_to(const FiniteGroupoid& g, OutcomeId a_f, std::size_t n_steps) {
    const std::size_t m = g.outcome_count();
    std::vector<std::vector<double>> paths(n_steps + 1, std::vector<double>(m, 0.0));
    paths[0][index(a_f)] = 1.0;
    for (std::size_t k = 1; k <= n_steps; ++k)
        for (std::size_t x = 0; x < m; ++x)
            for (auto e : g.transitions_from(outcome_id(x))) paths[k][x] += paths[k - 1][index(g.target(e))];
    return paths;
}

std::string count_text(double n) {
    if (n < 1e19) return std::to_string(static_cast<unsigned long long>(n));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", n);
    return buf;
}

void check_outcome(const FiniteGroupoid& g, OutcomeId a) {
    if (index(a) >= g.outcome_count()) throw ValidationError("unknown outcome index " + std::to_string(index(a)));
}

}  // namespace

double count_histories(const FiniteGroupoid& g, OutcomeId a_i, OutcomeId a_f, std::size_t n_steps) {
    check_outcome(g, a_i);
    check_outcome(g, a_f);
    return paths_to(g, a_f, n_steps)[n_steps][index(a_i)];
}

void visit_histories(const FiniteGroupoid& g, OutcomeId a_i, OutcomeId a_f, std::size_t n_steps,
                     const std::function<void(const std::vector<ElementId>&)>& visit, double cap) {
    check_outcome(g, a_i);
    check_outcome(g, a_f);
    const auto paths = paths_to(g, a_f, n_steps);
    const double required = paths[n_steps][index(a_i)];
    if (required > cap)
        throw CapExceededError("enumeration needs " + count_text(required) + " histories, cap is " + count_text(cap),
                               required);
    if (required == 0.0) return;

    std::vector<ElementId> steps;
    steps.reserve(n_steps);
    auto dfs = [&](auto&& self, OutcomeId at) -> void {
        if (steps.size() == n_steps) {
            visit(steps);
            return;
        }
        const std::size_t remaining = n_steps - steps.size() - 1;
        for (auto e : g.transitions_from(at)) {
            if (paths[remaining][index(g.target(e))] == 0.0) continue;
            steps.push_back(e);
            self(self, g.target(e));
            steps.pop_back();
        }
    };
    dfs(dfs, a_i);
}

std::vector<History> enumerate_histories(const GroupoidPtr& g, OutcomeId a_i, OutcomeId a_f, std::size_t n_steps,
                                         double t_start, double tau, double cap) {
    if (n_steps == 0) throw ValidationError("enumeration needs at least one step");
    std::vector<History> out;
    visit_histories(
        *g, a_i, a_f, n_steps, [&](const std::vector<ElementId>& steps) { out.push_back(History::future(g, t_start, tau, steps)); },
        cap);
    return out;
}

Complex step_amplitude(double p_source, double p_target, Complex ell, double tau, double hbar) {
    // same arithmetic as history_amplitude on a one-step history
    return std::sqrt(p_source * p_target) * phase_of_action(Complex{} + 1.0 * ell * tau, hbar);
}

Eigen::MatrixXcd single_step_matrix(const QLagrangian& ell, const OutcomeBias& p, double tau, double hbar) {
    if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
    if (!(tau > 0.0)) throw ValidationError("tau must be positive");
    const auto& g = *ell.groupoid();
    if (!(*p.groupoid() == g)) throw GroupoidMismatchError("bias lives on a different groupoid");
    const auto m = static_cast<Eigen::Index>(g.outcome_count());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(m, m);
    for (std::size_t i = 0; i < g.element_count(); ++i) {
        const auto e = element_id(i);
        const auto a = g.source(e);
        const auto b = g.target(e);
        u(static_cast<Eigen::Index>(index(b)), static_cast<Eigen::Index>(index(a))) +=
            step_amplitude(p(a), p(b), ell(e), tau, hbar);
    }
    return u;
}

Eigen::MatrixXcd n_step_path_sum(const QLagrangian& ell, const OutcomeBias& p, double tau, double hbar,
                                 std::size_t n_steps, double cap) {
    if (n_steps == 0) throw ValidationError("path sum needs at least one step");
    if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
    if (!(tau > 0.0)) throw ValidationError("tau must be positive");
    const auto& g = *ell.groupoid();
    if (!(*p.groupoid() == g)) throw GroupoidMismatchError("bias lives on a different groupoid");
    const std::size_t m = g.outcome_count();

    double required = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) required += count_histories(g, outcome_id(a), outcome_id(b), n_steps);
    if (required > cap)
        throw CapExceededError("path sum needs " + count_text(required) + " histories, cap is " + count_text(cap),
                               required);

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            const auto a_i = outcome_id(a);
            const auto a_f = outcome_id(b);
            const double c = std::sqrt(p(a_i) * p(a_f));
            Complex sum{};
            visit_histories(
                g, a_i, a_f, n_steps,
                [&](const std::vector<ElementId>& steps) {
                    Complex s{};
                    double weight = 1.0;
                    for (std::size_t k = 0; k < steps.size(); ++k) {
                        s += 1.0 * ell(steps[k]) * tau;
                        if (k + 1 < steps.size()) weight *= p(g.target(steps[k]));
                    }
                    sum += weight * (c * phase_of_action(s, hbar));
                },
                cap);
            out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = sum;
        }
    }
    return out;
}

}  // namespace qgroupoid
