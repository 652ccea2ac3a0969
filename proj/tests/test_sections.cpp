#include <doctest.h>

#include "support.hpp"

using namespace causal;

namespace {

/// Causality straight from the definition: rows that agree on the inputs in
/// downset(w) must agree on the output at w.
bool brute_is_causal(const Locale& L, const FlatTable& t) {
    const auto& s = L.scenario();
    const JointSpace ins = L.input_space(t.domain);
    const JointSpace outs = JointSpace::outputs(s, t.domain.support());
    for (std::size_t r1 = 0; r1 < ins.size(); ++r1) {
        for (std::size_t r2 = 0; r2 < ins.size(); ++r2) {
            const Assignment a1 = ins.decode(r1, s.size());
            const Assignment a2 = ins.decode(r2, s.size());
            const Assignment o1 = outs.decode(t.outputs[r1], s.size());
            const Assignment o2 = outs.decode(t.outputs[r2], s.size());
            for (EventIndex w : t.domain.support().members()) {
                bool same_past = true;
                for (EventIndex x : s.order().downset(w).members()) same_past = same_past && a1[x] == a2[x];
                if (same_past && o1[w] != o2[w]) return false;
            }
        }
    }
    return true;
}

/// Every flat table on u (outputs^rows of them).
std::vector<FlatTable> all_tables(const Locale& L, const LocaleElement& u) {
    const std::size_t rows = L.input_space(u).size();
    const std::size_t cols = JointSpace::outputs(L.scenario(), u.support()).size();
    std::vector<FlatTable> out;
    std::vector<std::size_t> digits(rows, 0);
    while (true) {
        out.push_back({u, digits});
        std::size_t k = rows;
        while (k > 0 && ++digits[k - 1] == cols) digits[--k] = 0;
        if (k == 0) break;
    }
    return out;
}

}  // namespace

TEST_SUITE("sections") {

TEST_CASE("is_causal on a two-event chain") {
    const auto s = support::binary(chain_order({"A", "B"}));
    const Locale L(s);
    const LocaleElement top = L.top();
    // Joint outputs: index 2 * o_A + o_B.
    CHECK(is_causal(L, {top, {0, 1, 2, 3}}));   // o_A = i_A, o_B = i_B
    CHECK(is_causal(L, {top, {0, 0, 3, 3}}));   // o_A = o_B = i_A
    CHECK_FALSE(is_causal(L, {top, {0, 2, 1, 3}}));  // o_A = i_B
    CHECK_THROWS_AS(is_causal(L, {top, {0, 1, 2}}), CausalError);
    CHECK_THROWS_AS(is_causal(L, {top, {0, 1, 2, 4}}), CausalError);
    CHECK_THROWS_AS(from_table(L, {top, {0, 2, 1, 3}}), CausalError);
}

TEST_CASE("is_causal agrees with the definition on every table") {
    for (const auto& po : enumerate_posets(support::event_names(2))) {
        const Locale L(support::binary(po));
        for (const auto& u : L.elements()) {
            std::size_t causal_tables = 0;
            for (const auto& t : all_tables(L, u)) {
                const bool expected = brute_is_causal(L, t);
                CHECK(is_causal(L, t) == expected);
                if (expected) {
                    ++causal_tables;
                    const CausalSection f = from_table(L, t);
                    CHECK(to_table(L, f).outputs == t.outputs);
                }
            }
            CHECK(count_sections(L, u) == causal_tables);
        }
    }
}

TEST_CASE("section counts") {
    const Locale diamond(support::binary(support::diamond_order()));
    // C: 2^2, A and B: 2^4 each, D: 2^16.
    CHECK(count_sections(diamond, diamond.top()) == mpz_class(1) << 26);
    CHECK_THROWS_AS(enumerate_sections(diamond, diamond.top()), CausalError);
    const Locale disc(support::binary(discrete_order({"A", "B"})));
    CHECK(count_sections(disc, disc.top()) == 16);
    CHECK(count_sections(disc, disc.bottom()) == 1);
    const Locale chain(support::binary(chain_order({"A", "B", "C"})));
    CHECK(count_sections(chain, chain.top()) == mpz_class(1) << (2 + 4 + 8));
}

TEST_CASE("enumeration is ordered, distinct and complete") {
    for (const auto& po : enumerate_posets(support::event_names(3))) {
        const Locale L(support::binary(po));
        const auto range = enumerate_sections(L, L.top());
        std::vector<CausalSection> seen;
        for (const auto& f : range) seen.push_back(f);
        CHECK(seen.size() == range.size());
        CHECK(count_sections(L, L.top()) == seen.size());
        CHECK(std::is_sorted(seen.begin(), seen.end()));
        CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
        if (po.is_discrete()) CHECK(seen.size() == 64);
    }
}

TEST_CASE("factorize and assemble are inverse") {
    std::mt19937_64 rng(3);
    const Locale L(support::binary(support::diamond_order()));
    const auto all = L.elements();
    for (int trial = 0; trial < 300; ++trial) {
        const auto& u = all[rng() % all.size()];
        const CausalSection f = support::random_section(L, u, rng);
        const SectionFactorization fac = factorize(L, f);
        CHECK(fac.domain == u);
        CHECK(assemble(L, fac) == f);
        CHECK(from_table(L, to_table(L, f)) == f);
    }
    SectionFactorization broken = factorize(L, support::random_section(L, L.top(), rng));
    broken.factors.back().table.pop_back();
    CHECK_THROWS_AS(assemble(L, broken), CausalError);
}

TEST_CASE("restriction matches the flat table and composes") {
    std::mt19937_64 rng(11);
    const auto s = support::binary(support::diamond_order());
    const Locale L(s);
    const auto all = L.elements();
    for (int trial = 0; trial < 500; ++trial) {
        const auto& u = all[rng() % all.size()];
        const auto& v = all[rng() % all.size()];
        const auto& w = all[rng() % all.size()];
        if (!L.leq(v, u) || !L.leq(w, v)) continue;
        const CausalSection f = support::random_section(L, u, rng);
        const CausalSection fv = restrict(L, f, v);
        CHECK(fv.domain() == v);
        CHECK(restrict(L, fv, w) == restrict(L, f, w));
        CHECK(restrict(L, f, u) == f);
        // Pointwise: on joint inputs of v, f|v applies as f.
        const JointSpace ins = JointSpace::inputs(*s, v.support());
        Assignment a(s->size(), -1);
        for (std::size_t k = 0; k < ins.size(); ++k) {
            ins.decode(k, a);
            bool in_box = true;
            for (EventIndex e : v.support().members()) in_box = in_box && ((v.subset(e) >> a[e]) & 1u);
            if (!in_box) continue;
            Assignment full = a;
            // Extend to u's support with any input in u's subsets.
            for (EventIndex e : (u.support() - v.support()).members()) full[e] = static_cast<int>(u.subset_members(e).front());
            const Assignment out_u = f.apply(L, full);
            const Assignment out_v = fv.apply(L, a);
            for (EventIndex e : v.support().members()) CHECK(out_u[e] == out_v[e]);
        }
    }
    const CausalSection f = support::random_section(L, all[3], rng);
    CHECK_THROWS_AS(restrict(L, f, L.top()), CausalError);
}

TEST_CASE("gluing on the discrete order is unique") {
    const auto s = support::binary(discrete_order({"A", "B"}));
    const Locale L(s);
    const LocaleElement u = L.from_subsets({1, 3});
    const LocaleElement v = L.from_subsets({2, 3});
    std::size_t pairs = 0;
    for (const auto& f : enumerate_sections(L, u)) {
        for (const auto& g : enumerate_sections(L, v)) {
            const GlueResult r = glue(L, f, g);
            const bool agree = restrict(L, f, L.meet(u, v)) == restrict(L, g, L.meet(u, v));
            CHECK(r.compatible == agree);
            if (!agree) continue;
            ++pairs;
            CHECK(r.unique());
            REQUIRE(r.section.has_value());
            CHECK(r.section->domain() == L.join(u, v));
            CHECK(restrict(L, *r.section, u) == f);
            CHECK(restrict(L, *r.section, v) == g);
        }
    }
    CHECK(pairs == 16);
}

TEST_CASE("gluing over a chain leaves free cells") {
    const auto s = support::binary(chain_order({"C", "A"}));
    const Locale L(s);
    const EventIndex A = s->event_index("A");
    const EventIndex C = s->event_index("C");
    std::vector<std::uint32_t> us(2), vs(2);
    us[C] = 1;
    us[A] = 1;
    vs[C] = 2;
    vs[A] = 2;
    const LocaleElement u = L.from_subsets(us);
    const LocaleElement v = L.from_subsets(vs);
    CHECK(L.meet(u, v) == L.bottom());
    const CausalSection f = *enumerate_sections(L, u).begin();
    const CausalSection g = *enumerate_sections(L, v).begin();
    const GlueResult r = glue(L, f, g);
    CHECK(r.compatible);
    CHECK_FALSE(r.unique());
    CHECK(r.free_cells.size() == 2);
    for (const auto& cell : r.free_cells) CHECK(cell.event == A);
    std::size_t extensions = 0;
    for (const auto& h : enumerate_sections(L, L.join(u, v))) {
        extensions += restrict(L, h, u) == f && restrict(L, h, v) == g;
    }
    CHECK(extensions == 4);
}

TEST_CASE("gluing counts match brute force on two events") {
    for (const auto& po : enumerate_posets(support::event_names(2))) {
        const Locale L(support::binary(po));
        const auto all = L.elements();
        for (std::size_t a = 0; a < all.size(); a += 3) {
            for (std::size_t b = 1; b < all.size(); b += 4) {
                const auto& u = all[a];
                const auto& v = all[b];
                const auto j = L.join(u, v);
                for (const auto& f : enumerate_sections(L, u)) {
                    for (const auto& g : enumerate_sections(L, v)) {
                        const GlueResult r = glue(L, f, g);
                        std::size_t ext = 0;
                        for (const auto& h : enumerate_sections(L, j)) {
                            ext += restrict(L, h, u) == f && restrict(L, h, v) == g;
                        }
                        if (!r.compatible) {
                            CHECK(ext == 0);
                            continue;
                        }
                        CHECK(ext == (std::size_t{1} << r.free_cells.size()));
                        CHECK(restrict(L, *r.section, u) == f);
                        CHECK(restrict(L, *r.section, v) == g);
                    }
                }
            }
        }
    }
}

}
