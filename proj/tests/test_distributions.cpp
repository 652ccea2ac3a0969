#include <doctest.h>

#include "support.hpp"

using namespace causal;

namespace {

template <typename R>
void check_axioms(const std::vector<R>& samples) {
    for (const auto& a : samples) {
        CHECK(a + R::zero() == a);
        CHECK(a * R::one() == a);
        CHECK(a * R::zero() == R::zero());
        for (const auto& b : samples) {
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            for (const auto& c : samples) {
                CHECK((a + b) + c == a + (b + c));
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * (b + c) == a * b + a * c);
            }
        }
    }
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("semiring axioms") {
    check_axioms<NonNegRational>({NonNegRational(0), NonNegRational(1), NonNegRational(1, 3), NonNegRational(7, 4)});
    check_axioms<Rational>({Rational(0), Rational(-2), Rational(1, 3), Rational(-5, 6)});
    check_axioms<Boolean>({Boolean(false), Boolean(true)});
}

TEST_CASE("rational parsing and printing") {
    CHECK(NonNegRational::parse("2/4") == NonNegRational(1, 2));
    CHECK(NonNegRational::parse("3") == NonNegRational(3));
    CHECK(NonNegRational(3, 6).to_string() == "1/2");
    CHECK(NonNegRational(4, 2).to_string() == "2");
    CHECK(Rational(-1, 3).to_string() == "-1/3");
    CHECK_THROWS_AS(NonNegRational::parse("1/0"), CausalError);
    CHECK_THROWS_AS(NonNegRational::parse("x"), CausalError);
    CHECK_THROWS_AS(NonNegRational::parse(""), CausalError);
    CHECK_THROWS_AS(NonNegRational::parse("-1/2"), CausalError);
    CHECK_THROWS_AS(NonNegRational(-1), CausalError);
}

TEST_CASE("section distributions must be normalized and based") {
    const Locale L(support::binary(discrete_order({"A", "B"})));
    std::mt19937_64 rng(5);
    const CausalSection f = support::random_section(L, L.top(), rng);
    CHECK_NOTHROW(SectionDistribution<NonNegRational>::point_mass(f));
    CHECK_THROWS_AS(SectionDistribution<NonNegRational>(L.top(), {{f, NonNegRational(1, 2)}}), CausalError);
    const CausalSection g = support::random_section(L, L.from_subsets({1, 1}), rng);
    CHECK_THROWS_AS(SectionDistribution<NonNegRational>(L.top(), {{g, NonNegRational(1)}}), CausalError);
    // Zero weights are dropped.
    const SectionDistribution<NonNegRational> d(L.top(), {{f, NonNegRational(1)}, {support::random_section(L, L.top(), rng), NonNegRational(0)}});
    CHECK(d.weights().size() <= 1);
}

TEST_CASE("marginalize sums weights over restrictions") {
    std::mt19937_64 rng(9);
    const Locale L(support::binary(support::diamond_order()));
    const auto all = L.elements();
    for (int trial = 0; trial < 200; ++trial) {
        const auto& u = all[rng() % all.size()];
        const auto& v = all[rng() % all.size()];
        const auto& w = all[rng() % all.size()];
        if (!L.leq(v, u) || !L.leq(w, v)) continue;
        const auto weights = support::random_simplex(3, rng);
        std::map<CausalSection, NonNegRational> m;
        for (const auto& wt : weights) m[support::random_section(L, u, rng)] += wt;
        const SectionDistribution<NonNegRational> d(u, m);
        const auto dv = marginalize(L, d, v);
        CHECK(dv.base() == v);
        // Independent sum over the original weights.
        std::map<CausalSection, NonNegRational> expected;
        for (const auto& [f, wt] : m) expected[restrict(L, f, v)] += wt;
        for (const auto& [g, wt] : expected) CHECK(dv.weight(g) == wt);
        CHECK(marginalize(L, dv, w) == marginalize(L, d, w));
        CHECK(marginalize(L, d, u) == d);
    }
}

TEST_CASE("delta and convex_mix") {
    const auto s = support::binary(discrete_order({"A", "B"}));
    const Locale L(s);
    std::mt19937_64 rng(21);
    const CausalSection f = support::random_section(L, L.top(), rng);
    const auto df = delta<NonNegRational>(L, f);
    const FlatTable flat = to_table(L, f);
    for (std::size_t r = 0; r < df.rows(); ++r) {
        for (std::size_t c = 0; c < df.cols(); ++c) CHECK(df.at(r, c) == NonNegRational(c == flat.outputs[r] ? 1 : 0));
    }
    CHECK(convex_mix<NonNegRational>(L, {{f, NonNegRational(1)}}) == df);
    CHECK(delta<Boolean>(L, f).at(0, flat.outputs[0]) == Boolean(true));

    const CausalSection g = support::random_section(L, L.top(), rng);
    const auto mix = convex_mix<NonNegRational>(L, {{f, NonNegRational(1, 3)}, {g, NonNegRational(2, 3)}});
    const auto dg = delta<NonNegRational>(L, g);
    for (std::size_t r = 0; r < mix.rows(); ++r) {
        for (std::size_t c = 0; c < mix.cols(); ++c) {
            CHECK(mix.at(r, c) == df.at(r, c) * NonNegRational(1, 3) + dg.at(r, c) * NonNegRational(2, 3));
        }
    }
    CHECK_THROWS_AS(convex_mix<NonNegRational>(L, {{f, NonNegRational(1, 3)}}), CausalError);
    const CausalSection h = support::random_section(L, L.from_subsets({1, 3}), rng);
    CHECK_THROWS_AS(delta<NonNegRational>(L, h), CausalError);
}

TEST_CASE("conditional distributions check shape and normalization") {
    const auto s = support::binary(discrete_order({"A"}));
    CHECK_NOTHROW(EmpiricalTable(s, {NonNegRational(1), NonNegRational(0), NonNegRational(1, 2), NonNegRational(1, 2)}));
    CHECK_THROWS_AS(EmpiricalTable(s, {NonNegRational(1), NonNegRational(0)}), CausalError);
    CHECK_THROWS_AS(EmpiricalTable(s, {NonNegRational(1), NonNegRational(1), NonNegRational(1, 2), NonNegRational(1, 2)}),
                    CausalError);
    CHECK_NOTHROW(ConditionalDistribution<Boolean>(s, {true, true, false, true}));
    CHECK_THROWS_AS(ConditionalDistribution<Boolean>(s, {false, false, false, true}), CausalError);
}

}
