#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgroupoid/groupoid.hpp"
#include "qgroupoid/lagrangian.hpp"

namespace qgroupoid {

/// Uniform partition t_start, t_start + τ, … of a time interval into N steps.
struct TimeGrid {
    double t_start = 0.0;
    double tau = 1.0;
    std::size_t n_steps = 0;

    /// Throws ValidationError unless tau > 0 and both values are finite.
    void validate() const;
};

enum class Orientation : int { future = 1, past = -1 };

constexpr int sign(Orientation o) noexcept { return static_cast<int>(o); }
constexpr Orientation flipped(Orientation o) noexcept {
    return o == Orientation::future ? Orientation::past : Orientation::future;
}

/// A run of steps traversed in one time direction.
///
/// Steps are stored as the transitions actually traversed, so within every
/// segment source(step k+1) = target(step k). A past segment rewinds the
/// grid by one τ per step.
struct Segment {
    Orientation orientation = Orientation::future;
    std::vector<ElementId> steps;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// A discrete history on a groupoid: a start point (a, t) and oriented segments.
///
/// Adjacent segments of equal orientation are merged and empty segments dropped,
/// so two histories with the same traversal compare equal.
class History {
public:
    /// Validates chaining and that the total step count equals grid.n_steps.
    /// `start` may be omitted when there is at least one step.
    static History make(GroupoidPtr groupoid, TimeGrid grid, std::vector<Segment> segments,
                        std::optional<OutcomeId> start = std::nullopt);

    /// A single future segment starting at t_start.
    static History future(GroupoidPtr groupoid, double t_start, double tau, std::vector<ElementId> steps);
    /// 𝟙_(a, t): no steps.
    static History unit(GroupoidPtr groupoid, OutcomeId a, double t, double tau);

    const GroupoidPtr& groupoid() const noexcept { return groupoid_; }
    const TimeGrid& grid() const noexcept { return grid_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }

    OutcomeId start_outcome() const noexcept { return start_; }
    OutcomeId end_outcome() const noexcept { return end_; }
    double start_time() const noexcept { return grid_.t_start; }
    /// t_start + (future steps − past steps)·τ
    double end_time() const noexcept;
    /// Future steps minus past steps.
    long long net_displacement() const noexcept;

    std::size_t step_count() const noexcept { return grid_.n_steps; }
    /// Stored steps in traversal order, paired with their orientation sign.
    std::vector<std::pair<ElementId, int>> trace() const;

    friend bool operator==(const History& a, const History& b);

private:
    History() = default;

    GroupoidPtr groupoid_;
    TimeGrid grid_;
    OutcomeId start_{};
    OutcomeId end_{};
    std::vector<Segment> segments_;
};

/// Relative tolerance used when matching end and start times of histories.
inline constexpr double kTimeTolerance = 1e-12;

/// w2 ∘ w1: w1 first, then w2. Throws ValidationError when the end (outcome, time)
/// of w1 differs from the start of w2 or the grids have different τ.
History compose_histories(const History& w2, const History& w1);

/// Reverses the segments, flips orientations and replaces each step by its inverse.
History invert_history(const History& w);

/// α_N ∘ … ∘ α₁ over the traversed steps; the unit at the start for an empty history.
ElementId total_variation(const History& w);

/// Same start and end outcome and the same start and end time.
bool is_loop(const History& w);

/// 𝒮(w) = Σ ε·ℓ(step)·τ with τ taken from the history's grid.
Complex action(const History& w, const QLagrangian& ell);

/// exp((i/ħ)·s)
Complex phase_of_action(Complex s, double hbar);

/// C(w) = sqrt(p(start)·p(end))
double normalization(const History& w, const OutcomeBias& p);

/// φ(w) = C(w)·exp((i/ħ)𝒮(w)). Throws ValidationError unless ħ > 0.
Complex history_amplitude(const History& w, const QLagrangian& ell, const OutcomeBias& p, double hbar);

/// σ = w_ref⁻¹ ∘ w, a loop at the start of w. Throws ValidationError unless both
/// histories share start and end (outcome, time).
History decompose_history(const History& w, const History& w_ref);

/// Δ(σ) = exp(−(i/ħ)𝒮(σ))
Complex delta_weight(const History& sigma, const QLagrangian& ell, double hbar);

/// Γ(w₀)·C(w₀)·exp((i/ħ)𝒮(w₀)), the amplitude written through a reference history.
Complex amplitude_via_reference(const History& w0, Complex gamma_w0, const QLagrangian& ell, const OutcomeBias& p,
                                double hbar);

/// `+:a,b;-:c` with `+` future and `-` past. Labels may contain commas inside parentheses.
std::string format_history(const History& w);
/// Inverse of format_history; `start` is required only for an empty trace.
History parse_history(const GroupoidPtr& g, std::string_view text, double t_start, double tau,
                      std::optional<OutcomeId> start = std::nullopt);

}  // namespace qgroupoid
