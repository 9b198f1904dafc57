#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qgroupoid/groupoid.hpp"
#include "qgroupoid/lagrangian.hpp"

namespace qgroupoid {

/// Disjoint, covering, non-empty blocks of an outcome set.
class OutcomePartition {
public:
    /// Throws ValidationError if blocks overlap, miss an outcome of `g` or are empty.
    OutcomePartition(const FiniteGroupoid& g, std::vector<std::vector<std::string>> blocks);

    /// Parses "x1,x2|x3,x4".
    static OutcomePartition parse(const FiniteGroupoid& g, std::string_view spec);

    const std::vector<std::vector<std::string>>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }

private:
    std::vector<std::vector<std::string>> blocks_;
};

struct CoarseGrained {
    GroupoidPtr groupoid;
    QLagrangian lagrangian;
};

/// Quotient of a pair groupoid by an outcome partition.
///
/// Blocks become outcomes B1, B2, … in partition order; the Lagrangian on the
/// quotient is the uniform average ℓ′((B,A)) = mean of ℓ((y,x)) over x ∈ A, y ∈ B.
/// A partition into singletons reproduces (g, ℓ) with the original labels.
CoarseGrained coarse_grain(const GroupoidPtr& g, const OutcomePartition& partition, const QLagrangian& ell);

}  // namespace qgroupoid
