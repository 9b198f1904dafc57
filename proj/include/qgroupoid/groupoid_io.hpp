#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgroupoid/groupoid.hpp"

namespace qgroupoid {

/// Parses a groupoid description.
///
/// Line-oriented, `#` starts a comment. Recognised directives:
///
///     outcomes: a b c
///     element: NAME SRC TGT
///     unit: OUTCOME NAME          (optional; otherwise the idempotent loop)
///     inverse: NAME NAME          (symmetric; units default to themselves)
///     compose: BETA ALPHA = GAMMA (BETA ∘ ALPHA)
///     table:                      (followed by the grid written by render_table)
///
/// With a `table:` block, endpoints and inverses that are not declared are
/// recovered from the grid and the unit declarations. The result is checked
/// with validate_axioms; failures raise ValidationError naming the axiom.
GroupoidPtr parse_groupoid(std::string_view text);
GroupoidPtr load_groupoid(const std::filesystem::path& path);

/// The full |Γ|×|Γ| composition grid, cell (row, column) = row ∘ column.
struct MultiplicationTable {
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<std::string>>> cells;

    std::size_t defined_cells() const;
};

MultiplicationTable multiplication_table(const FiniteGroupoid& g);

/// UTF-8 rendering using "∗" for non-composable cells. The output carries the
/// outcome and unit declarations, so parse_groupoid reads it back.
std::string render_table(const FiniteGroupoid& g);

}  // namespace qgroupoid
