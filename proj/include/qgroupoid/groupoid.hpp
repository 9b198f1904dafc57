#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qgroupoid {

enum class OutcomeId : std::uint32_t {};
enum class ElementId : std::uint32_t {};

constexpr std::size_t index(OutcomeId id) noexcept { return static_cast<std::size_t>(id); }
constexpr std::size_t index(ElementId id) noexcept { return static_cast<std::size_t>(id); }
constexpr OutcomeId outcome_id(std::size_t i) noexcept { return static_cast<OutcomeId>(i); }
constexpr ElementId element_id(std::size_t i) noexcept { return static_cast<ElementId>(i); }

/// Raw, possibly inconsistent description of a finite groupoid.
///
/// Indices refer to positions in `outcomes` and `elements`. The composition
/// table is stored row-major as `compose[beta * n + alpha]` holding `beta ∘ alpha`
/// (apply alpha first), empty where the pair is not composable.
struct GroupoidData {
    std::vector<std::string> outcomes;
    std::vector<std::string> elements;
    std::vector<std::size_t> source;
    std::vector<std::size_t> target;
    std::vector<std::size_t> unit_of;
    std::vector<std::size_t> inverse;
    std::vector<std::optional<std::size_t>> compose;
};

struct AxiomFailure {
    std::string axiom;
    std::string witness;
};

/// Outcome of an exhaustive axiom check; an empty failure list means valid.
struct ValidationReport {
    std::vector<AxiomFailure> failures;

    bool ok() const noexcept { return failures.empty(); }
    bool has_failure(std::string_view axiom) const;
    std::string summary(std::size_t max_lines = 20) const;
};

/// Checks every groupoid axiom by exhaustive enumeration, O(|Γ|³).
///
/// Axiom names used in the report: "shape", "labels", "unit", "composability",
/// "endpoints", "associativity", "left unit", "right unit", "inverse".
ValidationReport validate_axioms(const GroupoidData& data);

/// A validated finite groupoid Γ ⇉ Ω. Immutable after construction.
class FiniteGroupoid {
public:
    /// Validates `data` and throws ValidationError naming the first failed axioms.
    static std::shared_ptr<const FiniteGroupoid> create(GroupoidData data);

    std::size_t outcome_count() const noexcept { return data_.outcomes.size(); }
    std::size_t element_count() const noexcept { return data_.elements.size(); }

    const std::string& outcome_label(OutcomeId a) const { return data_.outcomes.at(index(a)); }
    const std::string& element_label(ElementId e) const { return data_.elements.at(index(e)); }
    std::span<const std::string> outcome_labels() const noexcept { return data_.outcomes; }
    std::span<const std::string> element_labels() const noexcept { return data_.elements; }

    OutcomeId source(ElementId e) const { return outcome_id(data_.source.at(index(e))); }
    OutcomeId target(ElementId e) const { return outcome_id(data_.target.at(index(e))); }
    ElementId unit(OutcomeId a) const { return element_id(data_.unit_of.at(index(a))); }
    ElementId inverse(ElementId e) const { return element_id(data_.inverse.at(index(e))); }
    bool is_unit(ElementId e) const { return unit(source(e)) == e; }

    bool composable(ElementId beta, ElementId alpha) const { return source(beta) == target(alpha); }
    /// beta ∘ alpha, or nothing when source(beta) != target(alpha).
    std::optional<ElementId> try_compose(ElementId beta, ElementId alpha) const;
    /// beta ∘ alpha; throws NotComposableError carrying both endpoints.
    ElementId compose(ElementId beta, ElementId alpha) const;

    std::optional<ElementId> find_element(std::string_view label) const;
    std::optional<OutcomeId> find_outcome(std::string_view label) const;
    /// Throws ValidationError for unknown labels.
    ElementId element(std::string_view label) const;
    OutcomeId outcome(std::string_view label) const;

    /// Transitions a → b, in element order.
    std::span<const ElementId> transitions_between(OutcomeId from, OutcomeId to) const;
    /// Transitions leaving `from`, in element order.
    std::span<const ElementId> transitions_from(OutcomeId from) const;

    /// True when every ordered pair of outcomes is joined by at most one transition,
    /// which is exactly when the fundamental representation is faithful.
    bool is_principal() const noexcept { return principal_; }
    /// True when every ordered pair of outcomes is joined by exactly one transition.
    bool is_pair_groupoid() const noexcept;

    const GroupoidData& data() const noexcept { return data_; }

    /// Structural equality: same labels and the same maps, independent of declaration order.
    friend bool operator==(const FiniteGroupoid& lhs, const FiniteGroupoid& rhs);

private:
    explicit FiniteGroupoid(GroupoidData data);

    GroupoidData data_;
    std::unordered_map<std::string, std::size_t> element_index_;
    std::unordered_map<std::string, std::size_t> outcome_index_;
    std::vector<std::vector<ElementId>> between_;  // [from * n_outcomes + to]
    std::vector<std::vector<ElementId>> from_;
    bool principal_ = true;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// The qubit groupoid A₂ = {1₊, 1₋, α, α⁻¹} with α: + → −.
///
/// Outcomes are declared in the order (−, +); element labels are
/// "1+", "1-", "alpha", "alpha^-1" in that order.
GroupoidPtr build_a2();

namespace a2 {
inline constexpr std::string_view kMinus = "-";
inline constexpr std::string_view kPlus = "+";
inline constexpr std::string_view kUnitPlus = "1+";
inline constexpr std::string_view kUnitMinus = "1-";
inline constexpr std::string_view kAlpha = "alpha";
inline constexpr std::string_view kAlphaInv = "alpha^-1";
}  // namespace a2

/// Pair groupoid P(Ω): element "(xi,xj)" is the transition xj → xi.
GroupoidPtr build_pair_groupoid(const std::vector<std::string>& labels);
/// Pair groupoid over the labels x1 … xn.
GroupoidPtr build_pair_groupoid(std::size_t n);

std::string pair_label(std::string_view target, std::string_view source);

}  // namespace qgroupoid
