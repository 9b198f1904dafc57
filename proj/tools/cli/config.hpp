#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgroupoid/lagrangian.hpp"
#include "qgroupoid/qubit_propagator.hpp"

namespace qgroupoid::cli {

enum class GammaMode { unit, given, solve };

struct SweepSpec {
    std::string parameter;  // "mu_tau_over_hbar" or "mu"
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 0;
};

/// Flat `key = value` run description. Unset keys keep these defaults.
struct RunConfig {
    std::string groupoid = "a2";  // "a2", "pair:N" or a groupoid file path
    double v_plus = 0.0;
    double v_minus = 0.0;
    double mu = 0.0;
    double delta = 0.0;
    double p_plus = 0.5;
    double tau = 1.0;
    double hbar = 1.0;
    std::size_t steps = 1;
    GammaMode gamma_mode = GammaMode::unit;
    VertexCoefficients gamma;
    double lambda = 0.0;
    double sigma = 0.0;
    double gauge = 1.0;
    std::optional<std::vector<double>> bias;
    std::vector<std::pair<std::string, Complex>> ell;
    std::optional<SweepSpec> sweep;
    /// Directory that relative groupoid paths are resolved against.
    std::filesystem::path base_dir;
};

/// Keys: groupoid, V_plus, V_minus, mu, delta, p_plus, tau, hbar, steps, gamma_mode
/// (unit | explicit | solve), gamma_mm, gamma_mp, gamma_pm, gamma_pp (re,im), Lambda,
/// Sigma, gauge, bias (comma list), ell (NAME = re,im; repeatable) and
/// sweep (PARAM, FROM, TO, POINTS). Throws ParseError with line and column.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

double parse_real(std::string_view text);
Complex parse_complex(std::string_view text);

}  // namespace qgroupoid::cli
