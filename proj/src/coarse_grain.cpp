#include "qgroupoid/coarse_grain.hpp"

#include <set>

#include "qgroupoid/error.hpp"

namespace qgroupoid {

OutcomePartition::OutcomePartition(const FiniteGroupoid& g, std::vector<std::vector<std::string>> blocks)
    : blocks_(std::move(blocks)) {
    std::set<std::string> seen;
    for (const auto& block : blocks_) {
        if (block.empty()) throw ValidationError("partition has an empty block");
        for (const auto& label : block) {
            if (!g.find_outcome(label)) throw ValidationError("partition names unknown outcome " + label);
            if (!seen.insert(label).second) throw ValidationError("outcome " + label + " appears in two blocks");
        }
    }
    if (seen.size() != g.outcome_count()) throw ValidationError("partition does not cover every outcome");
}

OutcomePartition OutcomePartition::parse(const FiniteGroupoid& g, std::string_view spec) {
    std::vector<std::vector<std::string>> blocks(1);
    std::string current;
    auto flush = [&] {
        if (!current.empty()) blocks.back().push_back(current);
        current.clear();
    };
    for (char c : spec) {
        if (c == ',') {
            flush();
        } else if (c == '|') {
            flush();
            blocks.emplace_back();
        } else if (c != ' ' && c != '\t') {
            current.push_back(c);
        }
    }
    flush();
    return OutcomePartition(g, std::move(blocks));
}

CoarseGrained coarse_grain(const GroupoidPtr& g, const OutcomePartition& partition, const QLagrangian& ell) {
    if (!g->is_pair_groupoid()) throw ValidationError("coarse graining requires a pair groupoid");
    if (!(*ell.groupoid() == *g)) throw GroupoidMismatchError("lagrangian lives on a different groupoid");

    const auto& blocks = partition.blocks();
    const bool singletons = blocks.size() == g->outcome_count();
    // singleton blocks keep the original labels and order, so the quotient is g itself
    std::vector<std::string> labels(g->outcome_labels().begin(), g->outcome_labels().end());
    if (!singletons) {
        labels.clear();
        for (std::size_t b = 0; b < blocks.size(); ++b) labels.push_back("B" + std::to_string(b + 1));
    }
    auto quotient = build_pair_groupoid(labels);

    auto block_of = [&](const std::string& label) -> std::size_t {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (const auto& x : blocks[b])
                if (x == label) return b;
        throw ValidationError("outcome " + label + " not in partition");
    };
    std::vector<std::size_t> quotient_index(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        quotient_index[b] = singletons ? index(quotient->outcome(blocks[b].front())) : b;

    std::vector<Complex> sums(quotient->element_count());
    std::vector<std::size_t> counts(quotient->element_count(), 0);
    for (std::size_t i = 0; i < g->element_count(); ++i) {
        const auto e = element_id(i);
        const std::size_t from = quotient_index[block_of(g->outcome_label(g->source(e)))];
        const std::size_t to = quotient_index[block_of(g->outcome_label(g->target(e)))];
        const auto q = quotient->transitions_between(outcome_id(from), outcome_id(to)).front();
        sums[index(q)] += ell(e);
        ++counts[index(q)];
    }
    for (std::size_t q = 0; q < sums.size(); ++q) sums[q] /= static_cast<double>(counts[q]);
    return CoarseGrained{quotient, QLagrangian(quotient, std::move(sums))};
}

}  // namespace qgroupoid
