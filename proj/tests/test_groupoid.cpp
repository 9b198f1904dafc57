#include <catch_amalgamated.hpp>

#include "qgroupoid/error.hpp"
#include "qgroupoid/groupoid.hpp"
#include "qgroupoid/groupoid_io.hpp"

using namespace qgroupoid;

namespace {

const std::string kData = QGROUPOID_DATA_DIR;

ElementId el(const GroupoidPtr& g, std::string_view label) { return g->element(label); }

std::string composed(const GroupoidPtr& g, std::string_view beta, std::string_view alpha) {
    return g->element_label(g->compose(el(g, beta), el(g, alpha)));
}

}  // namespace

TEST_CASE("A2 composition follows the worked examples") {
    const auto g = build_a2();
    CHECK(g->outcome_count() == 2);
    CHECK(g->element_count() == 4);
    CHECK(composed(g, "alpha^-1", "alpha") == "1+");
    CHECK(composed(g, "alpha^-1", "1-") == "alpha^-1");
    CHECK(composed(g, "alpha", "1+") == "alpha");
    CHECK(composed(g, "1-", "alpha") == "alpha");
    CHECK_FALSE(g->try_compose(el(g, "1+"), el(g, "1-")));
    CHECK(g->source(el(g, "alpha")) == g->outcome("+"));
    CHECK(g->target(el(g, "alpha")) == g->outcome("-"));
}

TEST_CASE("non-composable pairs raise an error carrying both endpoints") {
    const auto g = build_a2();
    try {
        g->compose(el(g, "alpha"), el(g, "alpha"));
        FAIL("expected NotComposableError");
    } catch (const NotComposableError& e) {
        const std::string what = e.what();
        CHECK(what.find("alpha") != std::string::npos);
        CHECK(what.find("+") != std::string::npos);
        CHECK(what.find("-") != std::string::npos);
    }
}

TEST_CASE("inverses") {
    const auto g = build_a2();
    CHECK(g->inverse(el(g, "alpha")) == el(g, "alpha^-1"));
    CHECK(g->inverse(el(g, "1+")) == el(g, "1+"));
    const auto p3 = build_pair_groupoid(3);
    CHECK(p3->element_label(p3->inverse(p3->element("(x1,x2)"))) == "(x2,x1)");
    CHECK_THROWS_AS(g->element("beta"), ValidationError);
}

TEST_CASE("pair groupoid structure") {
    const auto p3 = build_pair_groupoid(3);
    CHECK(composed(p3, "(x1,x2)", "(x2,x3)") == "(x1,x3)");
    CHECK(p3->source(p3->element("(x1,x2)")) == p3->outcome("x2"));

    const auto p1 = build_pair_groupoid(1);
    REQUIRE(p1->element_count() == 1);
    const auto only = element_id(0);
    CHECK(p1->is_unit(only));
    CHECK(p1->inverse(only) == only);

    CHECK(build_pair_groupoid(2)->element_count() == 4);
    CHECK(validate_axioms(build_pair_groupoid(2)->data()).ok());
    CHECK(validate_axioms(build_pair_groupoid(4)->data()).ok());
    CHECK_THROWS_AS(build_pair_groupoid(std::vector<std::string>{"a", "a"}), ValidationError);
    CHECK_THROWS_AS(build_pair_groupoid(std::vector<std::string>{}), ValidationError);
}

TEST_CASE("pair groupoid counting laws", "[property]") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto g = build_pair_groupoid(n);
        REQUIRE(g->element_count() == n * n);
        std::size_t units = 0;
        for (std::size_t i = 0; i < g->element_count(); ++i) {
            const auto a = element_id(i);
            units += g->is_unit(a) ? 1 : 0;
            std::size_t left = 0;
            std::size_t right = 0;
            for (std::size_t j = 0; j < g->element_count(); ++j) {
                left += g->composable(element_id(j), a) ? 1 : 0;
                right += g->composable(a, element_id(j)) ? 1 : 0;
            }
            CHECK(left == n);
            CHECK(right == n);
        }
        CHECK(units == n);
        CHECK(g->is_pair_groupoid());
    }
}

TEST_CASE("validate_axioms accepts A2 and flags a corrupted table") {
    CHECK(validate_axioms(build_a2()->data()).ok());

    auto data = build_a2()->data();
    const std::size_t n = data.elements.size();
    const auto alpha = index(build_a2()->element("alpha"));
    const auto alpha_inv = index(build_a2()->element("alpha^-1"));
    const auto unit_minus = index(build_a2()->element("1-"));
    data.compose[alpha_inv * n + alpha] = unit_minus;

    const auto report = validate_axioms(data);
    REQUIRE_FALSE(report.ok());
    CHECK(report.has_failure("endpoints"));
    CHECK(report.has_failure("associativity"));
    CHECK(report.has_failure("inverse"));
    bool triple = false;
    for (const auto& f : report.failures)
        if (f.axiom == "associativity" && f.witness.find("alpha") != std::string::npos) triple = true;
    CHECK(triple);
    CHECK_THROWS_AS(FiniteGroupoid::create(data), ValidationError);
}

TEST_CASE("validate_axioms reports a missing unit") {
    auto data = build_a2()->data();
    data.unit_of[0] = 99;
    const auto report = validate_axioms(data);
    CHECK(report.has_failure("unit"));
}

TEST_CASE("multiplication table reproduces Table 1 cell for cell") {
    const auto table = multiplication_table(*build_a2());
    REQUIRE(table.labels == std::vector<std::string>{"1+", "1-", "alpha", "alpha^-1"});
    using C = std::optional<std::string>;
    const std::vector<std::vector<C>> expected = {
        {C("1+"), std::nullopt, std::nullopt, C("alpha^-1")},
        {std::nullopt, C("1-"), C("alpha"), std::nullopt},
        {C("alpha"), std::nullopt, std::nullopt, C("1-")},
        {std::nullopt, C("alpha^-1"), C("1+"), std::nullopt},
    };
    CHECK(table.cells == expected);
    CHECK(table.defined_cells() == 8);

    CHECK(multiplication_table(*build_pair_groupoid(1)).defined_cells() == 1);
    CHECK(multiplication_table(*build_pair_groupoid(2)).defined_cells() == 8);
}

TEST_CASE("groupoid files") {
    CHECK(*load_groupoid(kData + "/a2.groupoid") == *build_a2());
    CHECK(*load_groupoid(kData + "/pair2.groupoid") == *build_pair_groupoid(2));

    try {
        load_groupoid(kData + "/a2_missing_inverse.groupoid");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("inverse undefined for alpha") != std::string::npos);
    }

    try {
        load_groupoid(kData + "/a2_broken.groupoid");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("associativity") != std::string::npos);
    }
}

TEST_CASE("rendered tables parse back to an equal groupoid", "[property]") {
    for (const auto& g : {build_a2(), build_pair_groupoid(1), build_pair_groupoid(2), build_pair_groupoid(4)}) {
        const std::string text = render_table(*g);
        CHECK(*parse_groupoid(text) == *g);
        CHECK(render_table(*parse_groupoid(text)) == text);
    }
}

TEST_CASE("parser diagnostics carry positions") {
    try {
        parse_groupoid("outcomes: a\nelement: e a\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_groupoid("outcomes: a\nfrobnicate: x\n"), ParseError);
    CHECK_THROWS_AS(parse_groupoid("outcomes: a b\nelement: e a b\nelement: 1a a a\nelement: 1b b b\n"), Error);
}

TEST_CASE("structural equality ignores declaration order") {
    const std::string text =
        "outcomes: + -\n"
        "element: alpha^-1 - +\n"
        "element: alpha + -\n"
        "element: 1- - -\n"
        "element: 1+ + +\n"
        "inverse: alpha alpha^-1\n"
        "compose: 1+ 1+ = 1+\n"
        "compose: 1- 1- = 1-\n"
        "compose: alpha 1+ = alpha\n"
        "compose: 1- alpha = alpha\n"
        "compose: alpha^-1 1- = alpha^-1\n"
        "compose: 1+ alpha^-1 = alpha^-1\n"
        "compose: alpha^-1 alpha = 1+\n"
        "compose: alpha alpha^-1 = 1-\n";
    CHECK(*parse_groupoid(text) == *build_a2());
    CHECK_FALSE(*build_pair_groupoid(2) == *build_a2());
}
