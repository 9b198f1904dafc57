#include "qgroupoid/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "qgroupoid/error.hpp"

namespace qgroupoid {

bool ValidationReport::has_failure(std::string_view axiom) const {
    return std::any_of(failures.begin(), failures.end(),
                       [&](const AxiomFailure& f) { return f.axiom == axiom; });
}

std::string ValidationReport::summary(std::size_t max_lines) const {
    std::ostringstream out;
    std::size_t shown = 0;
    for (const auto& f : failures) {
        if (shown == max_lines) {
            out << "... " << failures.size() - shown << " more\n";
            break;
        }
        out << f.axiom << ": " << f.witness << '\n';
        ++shown;
    }
    return out.str();
}

namespace {

class Checker {
public:
    explicit Checker(const GroupoidData& d) : d_(d), n_(d.elements.size()) {}

    ValidationReport run() {
        if (!check_shape()) return std::move(report_);
        check_labels();
        check_units();
        check_composability();
        check_associativity();
        check_unit_laws();
        check_inverses();
        return std::move(report_);
    }

private:
    // the same composite can fail from both of its factors; report it once
    void fail(std::string axiom, std::string witness) {
        for (const auto& f : report_.failures)
            if (f.axiom == axiom && f.witness == witness) return;
        report_.failures.push_back({std::move(axiom), std::move(witness)});
    }

    const std::string& el(std::size_t i) const { return d_.elements[i]; }
    const std::string& out(std::size_t i) const { return d_.outcomes[i]; }
    std::optional<std::size_t> comp(std::size_t beta, std::size_t alpha) const {
        return d_.compose[beta * n_ + alpha];
    }
    std::string pair(std::size_t beta, std::size_t alpha) const {
        return el(beta) + " ∘ " + el(alpha);
    }

    bool check_shape() {
        const std::size_t m = d_.outcomes.size();
        bool ok = true;
        auto expect = [&](std::size_t got, std::size_t want, const char* what) {
            if (got != want) {
                fail("shape", std::string(what) + " has " + std::to_string(got) + " entries, expected " +
                                  std::to_string(want));
                ok = false;
            }
        };
        expect(d_.source.size(), n_, "source map");
        expect(d_.target.size(), n_, "target map");
        expect(d_.inverse.size(), n_, "inverse map");
        expect(d_.unit_of.size(), m, "unit map");
        expect(d_.compose.size(), n_ * n_, "composition table");
        if (!ok) return false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (d_.source[i] >= m || d_.target[i] >= m) {
                fail("shape", "endpoint of " + el(i) + " is not an outcome");
                ok = false;
            }
            if (d_.inverse[i] >= n_) {
                fail("inverse", "inverse undefined for " + el(i));
                ok = false;
            }
        }
        for (std::size_t a = 0; a < m; ++a) {
            if (d_.unit_of[a] >= n_) {
                fail("unit", "unit undefined for outcome " + out(a));
                ok = false;
            }
        }
        for (const auto& c : d_.compose) {
            if (c && *c >= n_) {
                fail("shape", "composition table refers to an unknown element");
                ok = false;
                break;
            }
        }
        return ok;
    }

    void check_labels() {
        std::set<std::string> seen;
        for (const auto& e : d_.elements)
            if (!seen.insert(e).second) fail("labels", "duplicate element label " + e);
        seen.clear();
        for (const auto& o : d_.outcomes)
            if (!seen.insert(o).second) fail("labels", "duplicate outcome label " + o);
    }

    void check_units() {
        for (std::size_t a = 0; a < d_.outcomes.size(); ++a) {
            const std::size_t u = d_.unit_of[a];
            if (d_.source[u] != a || d_.target[u] != a)
                fail("unit", "unit " + el(u) + " of " + out(a) + " is not a loop at " + out(a));
        }
    }

    void check_composability() {
        for (std::size_t b = 0; b < n_; ++b) {
            for (std::size_t a = 0; a < n_; ++a) {
                const bool should = d_.source[b] == d_.target[a];
                const auto c = comp(b, a);
                if (should && !c) {
                    fail("composability", pair(b, a) + " is composable but undefined");
                } else if (!should && c) {
                    fail("composability", pair(b, a) + " is defined but " + el(b) + " starts at " +
                                              out(d_.source[b]) + " while " + el(a) + " ends at " +
                                              out(d_.target[a]));
                } else if (c && (d_.source[*c] != d_.source[a] || d_.target[*c] != d_.target[b])) {
                    fail("endpoints", pair(b, a) + " = " + el(*c) + " has endpoints " +
                                          out(d_.source[*c]) + " → " + out(d_.target[*c]) + ", expected " +
                                          out(d_.source[a]) + " → " + out(d_.target[b]));
                }
            }
        }
    }

    void check_associativity() {
        for (std::size_t g = 0; g < n_; ++g) {
            for (std::size_t b = 0; b < n_; ++b) {
                if (d_.source[g] != d_.target[b]) continue;
                const auto gb = comp(g, b);
                for (std::size_t a = 0; a < n_; ++a) {
                    if (d_.source[b] != d_.target[a]) continue;
                    const auto ba = comp(b, a);
                    std::optional<std::size_t> left = gb ? comp(*gb, a) : std::nullopt;
                    std::optional<std::size_t> right = ba ? comp(g, *ba) : std::nullopt;
                    if (!left || !right || *left != *right) {
                        auto show = [&](const std::optional<std::size_t>& v) {
                            return v ? el(*v) : std::string("undefined");
                        };
                        fail("associativity", "(" + el(g) + ", " + el(b) + ", " + el(a) + "): (γ∘β)∘α = " +
                                                  show(left) + ", γ∘(β∘α) = " + show(right));
                    }
                }
            }
        }
    }

    void check_unit_laws() {
        for (std::size_t a = 0; a < n_; ++a) {
            const std::size_t us = d_.unit_of[d_.source[a]];
            const std::size_t ut = d_.unit_of[d_.target[a]];
            const auto r = comp(a, us);
            if (!r || *r != a) fail("right unit", el(a) + " ∘ " + el(us) + " != " + el(a));
            const auto l = comp(ut, a);
            if (!l || *l != a) fail("left unit", el(ut) + " ∘ " + el(a) + " != " + el(a));
        }
    }

    void check_inverses() {
        for (std::size_t a = 0; a < n_; ++a) {
            const std::size_t inv = d_.inverse[a];
            const auto left = comp(inv, a);
            if (!left || *left != d_.unit_of[d_.source[a]])
                fail("inverse", el(inv) + " ∘ " + el(a) + " is not the unit at " + out(d_.source[a]));
            const auto right = comp(a, inv);
            if (!right || *right != d_.unit_of[d_.target[a]])
                fail("inverse", el(a) + " ∘ " + el(inv) + " is not the unit at " + out(d_.target[a]));
            if (d_.inverse[inv] != a) fail("inverse", "inverse of inverse of " + el(a) + " is not " + el(a));
        }
    }

    const GroupoidData& d_;
    std::size_t n_;
    ValidationReport report_;
};

}  // namespace

ValidationReport validate_axioms(const GroupoidData& data) { return Checker(data).run(); }

std::shared_ptr<const FiniteGroupoid> FiniteGroupoid::create(GroupoidData data) {
    auto report = validate_axioms(data);
    if (!report.ok()) throw ValidationError("groupoid axioms violated:\n" + report.summary(8));
    return std::shared_ptr<const FiniteGroupoid>(new FiniteGroupoid(std::move(data)));
}

FiniteGroupoid::FiniteGroupoid(GroupoidData data) : data_(std::move(data)) {
    const std::size_t m = data_.outcomes.size();
    for (std::size_t i = 0; i < data_.elements.size(); ++i) element_index_.emplace(data_.elements[i], i);
    for (std::size_t a = 0; a < m; ++a) outcome_index_.emplace(data_.outcomes[a], a);
    between_.resize(m * m);
    from_.resize(m);
    for (std::size_t i = 0; i < data_.elements.size(); ++i) {
        between_[data_.source[i] * m + data_.target[i]].push_back(element_id(i));
        from_[data_.source[i]].push_back(element_id(i));
    }
    principal_ = std::all_of(between_.begin(), between_.end(), [](const auto& v) { return v.size() <= 1; });
}

std::optional<ElementId> FiniteGroupoid::try_compose(ElementId beta, ElementId alpha) const {
    const auto c = data_.compose.at(index(beta) * element_count() + index(alpha));
    if (!c) return std::nullopt;
    return element_id(*c);
}

ElementId FiniteGroupoid::compose(ElementId beta, ElementId alpha) const {
    if (auto c = try_compose(beta, alpha)) return *c;
    throw NotComposableError("cannot compose " + element_label(beta) + " (" + outcome_label(source(beta)) +
                             " → " + outcome_label(target(beta)) + ") after " + element_label(alpha) + " (" +
                             outcome_label(source(alpha)) + " → " + outcome_label(target(alpha)) + ")");
}

std::optional<ElementId> FiniteGroupoid::find_element(std::string_view label) const {
    auto it = element_index_.find(std::string(label));
    if (it == element_index_.end()) return std::nullopt;
    return element_id(it->second);
}

std::optional<OutcomeId> FiniteGroupoid::find_outcome(std::string_view label) const {
    auto it = outcome_index_.find(std::string(label));
    if (it == outcome_index_.end()) return std::nullopt;
    return outcome_id(it->second);
}

ElementId FiniteGroupoid::element(std::string_view label) const {
    if (auto e = find_element(label)) return *e;
    throw ValidationError("unknown element " + std::string(label));
}

OutcomeId FiniteGroupoid::outcome(std::string_view label) const {
    if (auto a = find_outcome(label)) return *a;
    throw ValidationError("unknown outcome " + std::string(label));
}

std::span<const ElementId> FiniteGroupoid::transitions_between(OutcomeId from, OutcomeId to) const {
    return between_.at(index(from) * outcome_count() + index(to));
}

std::span<const ElementId> FiniteGroupoid::transitions_from(OutcomeId from) const {
    return from_.at(index(from));
}

bool FiniteGroupoid::is_pair_groupoid() const noexcept {
    return std::all_of(between_.begin(), between_.end(), [](const auto& v) { return v.size() == 1; });
}

bool operator==(const FiniteGroupoid& lhs, const FiniteGroupoid& rhs) {
    if (lhs.element_count() != rhs.element_count() || lhs.outcome_count() != rhs.outcome_count()) return false;
    using Row = std::tuple<std::string, std::string, std::string, std::string>;
    auto canonical = [](const FiniteGroupoid& g) {
        const auto& d = g.data_;
        std::set<std::string> outcomes(d.outcomes.begin(), d.outcomes.end());
        std::map<std::string, Row> elements;
        std::map<std::string, std::string> units;
        std::map<std::pair<std::string, std::string>, std::string> table;
        for (std::size_t i = 0; i < d.elements.size(); ++i) {
            elements[d.elements[i]] = Row{d.outcomes[d.source[i]], d.outcomes[d.target[i]],
                                          d.elements[d.inverse[i]], std::string{}};
        }
        for (std::size_t a = 0; a < d.outcomes.size(); ++a) units[d.outcomes[a]] = d.elements[d.unit_of[a]];
        const std::size_t n = d.elements.size();
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t a = 0; a < n; ++a)
                if (auto c = d.compose[b * n + a]) table[{d.elements[b], d.elements[a]}] = d.elements[*c];
        return std::make_tuple(outcomes, elements, units, table);
    };
    return canonical(lhs) == canonical(rhs);
}

GroupoidPtr build_a2() {
    static const GroupoidPtr instance = [] {
        // outcomes: 0 = "-", 1 = "+"; elements: 0 = 1+, 1 = 1-, 2 = alpha (+ → -), 3 = alpha^-1 (- → +)
        GroupoidData d;
        d.outcomes = {std::string(a2::kMinus), std::string(a2::kPlus)};
        d.elements = {std::string(a2::kUnitPlus), std::string(a2::kUnitMinus), std::string(a2::kAlpha),
                      std::string(a2::kAlphaInv)};
        d.source = {1, 0, 1, 0};
        d.target = {1, 0, 0, 1};
        d.unit_of = {1, 0};
        d.inverse = {0, 1, 3, 2};
        d.compose.assign(16, std::nullopt);
        auto set = [&](std::size_t beta, std::size_t alpha, std::size_t result) { d.compose[beta * 4 + alpha] = result; };
        set(0, 0, 0);  // 1+ ∘ 1+
        set(0, 3, 3);  // 1+ ∘ alpha^-1
        set(1, 1, 1);  // 1- ∘ 1-
        set(1, 2, 2);  // 1- ∘ alpha
        set(2, 0, 2);  // alpha ∘ 1+
        set(2, 3, 1);  // alpha ∘ alpha^-1
        set(3, 1, 3);  // alpha^-1 ∘ 1-
        set(3, 2, 0);  // alpha^-1 ∘ alpha
        return FiniteGroupoid::create(std::move(d));
    }();
    return instance;
}

std::string pair_label(std::string_view target, std::string_view source) {
    return "(" + std::string(target) + "," + std::string(source) + ")";
}

GroupoidPtr build_pair_groupoid(const std::vector<std::string>& labels) {
    const std::size_t n = labels.size();
    if (n == 0) throw ValidationError("pair groupoid needs at least one outcome");
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() != n) throw ValidationError("pair groupoid labels must be distinct");

    GroupoidData d;
    d.outcomes = labels;
    // element (i, j) = transition x_j → x_i at index i * n + j
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d.elements.push_back(pair_label(labels[i], labels[j]));
            d.target.push_back(i);
            d.source.push_back(j);
            d.inverse.push_back(j * n + i);
        }
    }
    for (std::size_t i = 0; i < n; ++i) d.unit_of.push_back(i * n + i);
    const std::size_t total = n * n;
    d.compose.assign(total * total, std::nullopt);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) d.compose[(i * n + j) * total + (j * n + k)] = i * n + k;
    return FiniteGroupoid::create(std::move(d));
}

GroupoidPtr build_pair_groupoid(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
    return build_pair_groupoid(labels);
}

}  // namespace qgroupoid
