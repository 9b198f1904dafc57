#include <catch_amalgamated.hpp>
#include <random>

#include "qgroupoid/coarse_grain.hpp"
#include "qgroupoid/error.hpp"
#include "qgroupoid/groupoid_io.hpp"

using namespace qgroupoid;

namespace {

QLagrangian index_difference(const GroupoidPtr& g) {
    std::vector<Complex> values(g->element_count());
    for (std::size_t y = 0; y < g->outcome_count(); ++y)
        for (std::size_t x = 0; x < g->outcome_count(); ++x) {
            const auto e = g->transitions_between(outcome_id(x), outcome_id(y)).front();
            values[index(e)] = Complex(0.0, static_cast<double>(y) - static_cast<double>(x));
        }
    return QLagrangian(g, values);
}

}  // namespace

TEST_CASE("constant lagrangian stays constant") {
    const auto g = build_pair_groupoid(4);
    const QLagrangian ell(g, std::vector<Complex>(16, Complex(0.7, 0.0)));
    const auto q = coarse_grain(g, OutcomePartition::parse(*g, "x1,x2|x3,x4"), ell);
    CHECK(q.groupoid->outcome_count() == 2);
    CHECK(*q.groupoid == *build_pair_groupoid(std::vector<std::string>{"B1", "B2"}));
    for (auto v : q.lagrangian.values()) CHECK(v == Complex(0.7, 0.0));
}

TEST_CASE("singleton partition is the identity quotient") {
    const auto g = build_pair_groupoid(2);
    const QLagrangian ell(g, {Complex(1, 0), Complex(2, 3), Complex(2, -3), Complex(-1, 0)});
    const auto q = coarse_grain(g, OutcomePartition::parse(*g, "x1|x2"), ell);
    CHECK(*q.groupoid == *g);
    CHECK(q.lagrangian.values() == ell.values());
}

TEST_CASE("block average of the index-difference lagrangian") {
    const auto g = build_pair_groupoid(4);
    const auto q = coarse_grain(g, OutcomePartition::parse(*g, "x1,x2|x3,x4"), index_difference(g));
    CHECK(q.lagrangian.at("(B2,B1)") == Complex(0.0, 2.0));
    CHECK(q.lagrangian.at("(B1,B2)") == Complex(0.0, -2.0));
    CHECK(q.lagrangian.at("(B1,B1)") == Complex(0.0, 0.0));
}

TEST_CASE("coarse-grained lagrangian is self-adjoint", "[property]") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t size = 2 + trial % 5;
        const auto g = build_pair_groupoid(size);
        std::vector<Complex> values(g->element_count());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const auto e = element_id(i);
            const auto inv = g->inverse(e);
            if (index(inv) < i) {
                values[i] = std::conj(values[index(inv)]);
            } else {
                values[i] = inv == e ? Complex(n(rng), 0.0) : Complex(n(rng), n(rng));
            }
        }
        const QLagrangian ell(g, values);
        // random partition into up to three non-empty blocks
        std::vector<std::vector<std::string>> blocks(std::min<std::size_t>(3, size));
        for (std::size_t x = 0; x < size; ++x)
            blocks[x < blocks.size() ? x : rng() % blocks.size()].push_back("x" + std::to_string(x + 1));
        const auto q = coarse_grain(g, OutcomePartition(*g, blocks), ell);
        CHECK(q.lagrangian.self_adjoint_defect() <= 1e-12);
    }
}

TEST_CASE("partition and input validation") {
    const auto g = build_pair_groupoid(3);
    CHECK_THROWS_AS(OutcomePartition::parse(*g, "x1,x2"), ValidationError);
    CHECK_THROWS_AS(OutcomePartition::parse(*g, "x1,x2|x2,x3"), ValidationError);
    CHECK_THROWS_AS(OutcomePartition::parse(*g, "x1,x2,x3|"), ValidationError);
    CHECK_THROWS_AS(OutcomePartition::parse(*g, "x1,x2|x9"), ValidationError);

    // A2 is a pair groupoid up to labels; a group with two loops on one outcome is not
    const auto a2 = build_a2();
    CHECK(coarse_grain(a2, OutcomePartition::parse(*a2, "-,+"), QLagrangian::zero(a2)).groupoid->element_count() == 1);
    const auto z2 = parse_groupoid(
        "outcomes: o\nelement: e o o\nelement: s o o\ninverse: s s\n"
        "compose: e e = e\ncompose: e s = s\ncompose: s e = s\ncompose: s s = e\n");
    CHECK_THROWS_AS(coarse_grain(z2, OutcomePartition::parse(*z2, "o"), QLagrangian::zero(z2)), ValidationError);
    CHECK_THROWS_AS(coarse_grain(g, OutcomePartition::parse(*g, "x1|x2,x3"), QLagrangian::zero(build_pair_groupoid(2))),
                    GroupoidMismatchError);
}
