#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "config.hpp"
#include "qgroupoid/error.hpp"
#include "qgroupoid/groupoid.hpp"
#include "qgroupoid/lagrangian.hpp"
#include "qgroupoid/qubit_propagator.hpp"

namespace qgroupoid::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kUnavailable = 2 };

struct CommandOptions {
    std::optional<std::size_t> power;
    std::optional<std::size_t> steps;
    std::optional<std::string> check_semigroup;  // "A+B"
    std::optional<std::string> partition;        // "x1,x2|x3,x4"
    std::optional<std::string> state;            // "re,im;re,im"
};

/// A required construction has no solution (e.g. no unitary vertex coefficients).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

GroupoidPtr resolve_groupoid(const RunConfig& cfg);
/// Explicit `ell` entries when present, the qubit Lagrangian on A₂ otherwise, else ℓ ≡ 0.
QLagrangian resolve_lagrangian(const RunConfig& cfg, const GroupoidPtr& g);
/// `bias` when present, (p₋, p₊) from p_plus on A₂, else uniform.
OutcomeBias resolve_bias(const RunConfig& cfg, const GroupoidPtr& g);
/// The qubit model with Γ per gamma_mode; throws InfeasibleError when solving fails.
PropagatorModel resolve_model(const RunConfig& cfg);

int cmd_validate(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_table(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_propagator(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_pathsum(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_evolve(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);
int cmd_coarse_grain(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out);

/// Runs `name`, mapping library errors to exit codes: 1 for parse and validation
/// errors, 2 for exceeded caps and infeasible constructions. Diagnostics go to `err`.
int run_command(std::string_view name, const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
                std::ostream& err);

}  // namespace qgroupoid::cli
