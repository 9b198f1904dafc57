#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qgroupoid/error.hpp"

namespace qgroupoid::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep, bool trimmed = true) {
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            const auto part = s.substr(begin, i - begin);
            parts.push_back(trimmed ? trim(part) : part);
            begin = i + 1;
        }
    }
    return parts;
}

std::size_t parse_count(std::string_view text) {
    text = trim(text);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("expected a nonnegative integer, got '" + std::string(text) + "'");
    return value;
}

}  // namespace

double parse_real(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        throw ParseError("expected a real number, got '" + std::string(text) + "'");
    return value;
}

Complex parse_complex(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() == 1) return {parse_real(parts[0]), 0.0};
    if (parts.size() != 2) throw ParseError("expected re,im, got '" + std::string(trim(text)) + "'");
    return {parse_real(parts[0]), parse_real(parts[1])};
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::set<std::string> seen;
    const auto lines = split(text, '\n', false);
    for (std::size_t line_no = 1; line_no <= lines.size(); ++line_no) {
        const std::string_view raw = lines[line_no - 1];
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            const auto col = static_cast<std::size_t>(trim(line).data() - raw.data()) + 1;
            throw ParseError("expected key = value", line_no, col);
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = line.substr(eq + 1);
        const std::size_t value_col = static_cast<std::size_t>(trim(value).data() - raw.data()) + 1;
        const std::size_t key_col = static_cast<std::size_t>(trim(line).data() - raw.data()) + 1;

        if (key != "ell" && !seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line_no, key_col);

        try {
            if (key == "groupoid") {
                cfg.groupoid = std::string(trim(value));
                if (cfg.groupoid.empty()) throw ParseError("groupoid must not be empty");
            } else if (key == "V_plus") {
                cfg.v_plus = parse_real(value);
            } else if (key == "V_minus") {
                cfg.v_minus = parse_real(value);
            } else if (key == "mu") {
                cfg.mu = parse_real(value);
            } else if (key == "delta") {
                cfg.delta = parse_real(value);
            } else if (key == "p_plus") {
                cfg.p_plus = parse_real(value);
                if (!(cfg.p_plus >= 0.0 && cfg.p_plus <= 0.5)) throw ParseError("p_plus must lie in [0, 1/2]");
            } else if (key == "tau") {
                cfg.tau = parse_real(value);
                if (!(cfg.tau > 0.0)) throw ParseError("tau must be positive");
            } else if (key == "hbar") {
                cfg.hbar = parse_real(value);
                if (!(cfg.hbar > 0.0)) throw ParseError("hbar must be positive");
            } else if (key == "steps") {
                cfg.steps = parse_count(value);
            } else if (key == "gamma_mode") {
                const auto mode = trim(value);
                if (mode == "unit") {
                    cfg.gamma_mode = GammaMode::unit;
                } else if (mode == "explicit") {
                    cfg.gamma_mode = GammaMode::given;
                } else if (mode == "solve") {
                    cfg.gamma_mode = GammaMode::solve;
                } else {
                    throw ParseError("gamma_mode must be unit, explicit or solve");
                }
            } else if (key == "gamma_mm") {
                cfg.gamma.mm = parse_complex(value);
            } else if (key == "gamma_mp") {
                cfg.gamma.mp = parse_complex(value);
            } else if (key == "gamma_pm") {
                cfg.gamma.pm = parse_complex(value);
            } else if (key == "gamma_pp") {
                cfg.gamma.pp = parse_complex(value);
            } else if (key == "Lambda") {
                cfg.lambda = parse_real(value);
            } else if (key == "Sigma") {
                cfg.sigma = parse_real(value);
            } else if (key == "gauge") {
                cfg.gauge = parse_real(value);
                if (!(cfg.gauge > 0.0)) throw ParseError("gauge must be positive");
            } else if (key == "bias") {
                std::vector<double> probs;
                for (auto part : split(value, ',')) probs.push_back(parse_real(part));
                cfg.bias = std::move(probs);
            } else if (key == "ell") {
                // ell = NAME = re,im
                const auto inner = value.find('=');
                if (inner == std::string_view::npos) throw ParseError("expected ell = NAME = re,im");
                const auto name = trim(value.substr(0, inner));
                if (name.empty()) throw ParseError("ell entry needs an element name");
                cfg.ell.emplace_back(std::string(name), parse_complex(value.substr(inner + 1)));
            } else if (key == "sweep") {
                const auto parts = split(value, ',');
                if (parts.size() != 4) throw ParseError("expected sweep = PARAM, FROM, TO, POINTS");
                SweepSpec s{std::string(parts[0]), parse_real(parts[1]), parse_real(parts[2]), parse_count(parts[3])};
                if (s.parameter != "mu_tau_over_hbar" && s.parameter != "mu")
                    throw ParseError("sweep parameter must be mu_tau_over_hbar or mu");
                if (s.points < 2) throw ParseError("sweep needs at least 2 points");
                cfg.sweep = std::move(s);
            } else {
                throw ParseError("unknown key '" + key + "'", line_no, key_col);
            }
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError(std::string("key '") + key + "': " + e.what(), line_no, value_col);
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    RunConfig cfg = parse_config(buf.str());
    cfg.base_dir = path.parent_path();
    return cfg;
}

}  // namespace qgroupoid::cli
