#include <doctest.h>

#include <cmath>

#include "causal/io.hpp"
#include "causal/realize.hpp"
#include "support.hpp"

using namespace causal;

namespace {

const std::string kData = CAUSAL_DATA_DIR;

bool mentions(const std::vector<std::string>& problems, const std::string& text) {
    for (const auto& p : problems) {
        if (p.find(text) != std::string::npos) return true;
    }
    return false;
}

/// Causality of a float table: every lowerset marginal is independent of the
/// inputs outside the lowerset, to within tol.
bool float_causal(const CausalScenario& s, const std::vector<double>& p, double tol) {
    const EventSet all = s.order().all();
    const JointSpace ins = JointSpace::inputs(s, all);
    const JointSpace outs = JointSpace::outputs(s, all);
    for (EventSet lam : lowersets(s.order())) {
        const JointSpace small = JointSpace::outputs(s, lam);
        const auto proj = project_indices(outs, small, s.size());
        for (std::size_t i = 0; i < ins.size(); ++i) {
            for (std::size_t j = 0; j < ins.size(); ++j) {
                const Assignment a = ins.decode(i, s.size());
                const Assignment b = ins.decode(j, s.size());
                bool agree = true;
                for (EventIndex w : lam.members()) agree = agree && a[w] == b[w];
                if (!agree) continue;
                std::vector<double> mi(small.size()), mj(small.size());
                for (std::size_t c = 0; c < outs.size(); ++c) {
                    mi[proj[c]] += p[i * outs.size() + c];
                    mj[proj[c]] += p[j * outs.size() + c];
                }
                for (std::size_t c = 0; c < small.size(); ++c) {
                    if (std::abs(mi[c] - mj[c]) > tol) return false;
                }
            }
        }
    }
    return true;
}

/// Every ordering of the events compatible with the order.
std::vector<std::vector<EventIndex>> linear_extensions(const Preorder& po) {
    std::vector<EventIndex> perm(po.size());
    for (EventIndex e = 0; e < po.size(); ++e) perm[e] = e;
    std::vector<std::vector<EventIndex>> out;
    do {
        bool ok = true;
        for (std::size_t a = 0; a < perm.size(); ++a) {
            for (std::size_t b = a + 1; b < perm.size(); ++b) {
                if (po.leq(perm[b], perm[a])) ok = false;
            }
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

TEST_SUITE("realize") {

TEST_CASE("the builtin diamond is valid") {
    const Diagram d = diamond_builtin();
    CHECK(validate(d).empty());
    CHECK(d.scenario->order() == support::diamond_order());
}

TEST_CASE("validation itemizes problems") {
    const Diagram good = diamond_builtin();
    const auto& s = *good.scenario;
    {
        Diagram d = good;
        d.instruments.pop_back();
        CHECK(mentions(validate(d), "instruments"));
    }
    {
        Diagram d = good;
        d.instruments[s.event_index("A")].operators[0][0] *= 2.0;
        CHECK(mentions(validate(d), "not complete"));
    }
    {
        Diagram d = good;
        d.wires[0] = Wire{d.wires[0].to, d.wires[0].from, 2};
        CHECK(mentions(validate(d), "strictly forward"));
    }
    {
        Diagram d = good;
        d.instruments[s.event_index("D")].in_wires.pop_back();
        CHECK(mentions(validate(d), "consumed 0 times"));
    }
    {
        Diagram d = good;
        auto& op = d.instruments[s.event_index("B")].operators[1][1];
        op = Eigen::MatrixXcd::Identity(3, 3);
        CHECK(mentions(validate(d), "operator is 3x3"));
    }
    {
        Diagram d = good;
        d.instruments[s.event_index("C")].operators.pop_back();
        CHECK(mentions(validate(d), "operator families"));
    }
    {
        Diagram d = good;
        d.wires.push_back(Wire{"Q", "A", 2});
        CHECK(mentions(validate(d), "unknown event"));
    }
    {
        Diagram d = good;
        d.scenario = make_scenario(s.with_order(indiscrete_order(s.events())));
        CHECK(mentions(validate(d), "not a partial order"));
    }
    Diagram broken = good;
    broken.instruments.pop_back();
    CHECK_THROWS_AS(evaluate(broken), CausalError);
}

TEST_CASE("rational snapping") {
    CHECK(snap_probability(0.5) == NonNegRational(1, 2));
    CHECK(snap_probability(1.0 / 3.0 + 1e-12) == NonNegRational(1, 3));
    CHECK(snap_probability(0.0) == NonNegRational(0));
    CHECK(snap_probability(1.0) == NonNegRational(1));
    CHECK(snap_probability(1.0 / 1024.0) == NonNegRational(1, 1024));
    CHECK(snap_probability(3.0 / 16.0 - 5e-10) == NonNegRational(3, 16));
    CHECK_THROWS_AS(snap_probability(std::sqrt(0.5)), Unsnappable);
    CHECK_THROWS_AS(snap_probability(-0.1), Unsnappable);
    CHECK_THROWS_AS(snap_probability(1.5), Unsnappable);
}

TEST_CASE("diamond physics: D reads the parity measured by A and B") {
    const Diagram d = diamond_builtin();
    const EmpiricalTable e = evaluate(d);
    const auto& s = e.scenario();
    const EventIndex A = s.event_index("A"), B = s.event_index("B"), C = s.event_index("C"), D = s.event_index("D");
    CHECK(check_causality(e).causal());
    for (std::size_t row = 0; row < e.rows(); ++row) {
        const Assignment in = e.input(row);
        const bool aligned = in[A] == in[B] && in[B] == in[D];
        for (std::size_t col = 0; col < e.cols(); ++col) {
            const Assignment out = e.output(col);
            // p(o_A, o_B, o_C) with o_D marginalized.
            Assignment other = out;
            other[D] = 1 - out[D];
            const NonNegRational pair = e.at(row, col) + e.at(row, e.output_space().encode(other));
            if (aligned) {
                const bool parity = out[D] == (out[A] ^ out[B]);
                CHECK(e.at(row, col) == (parity ? pair : NonNegRational(0)));
            } else {
                CHECK(e.at(row, col) * NonNegRational(2) == pair);
            }
        }
    }
    (void)C;
}

TEST_CASE("diamond lowerset marginals match the fixtures") {
    const EmpiricalTable e = evaluate(diamond_builtin());
    const auto& s = e.scenario();
    for (const char* name : {"C", "CA", "CAB"}) {
        const auto fixture = read_model(kData + "/diamond_" + std::string(name) + ".model.json");
        EventSet mu;
        for (const char* p = name; *p; ++p) mu.insert(s.event_index(std::string(1, *p)));
        const auto restricted = as_full_model(restrict_model(e, mu));
        CAPTURE(name);
        CHECK(restricted.table() == fixture.table());
    }
}

TEST_CASE("schedules do not change the probabilities") {
    const Diagram d = diamond_builtin();
    const auto base = evaluate_probabilities(d);
    const auto exts = linear_extensions(d.scenario->order());
    CHECK(exts.size() == 2);
    for (const auto& sched : exts) {
        const auto p = evaluate_probabilities(d, sched);
        for (std::size_t k = 0; k < p.size(); ++k) CHECK(std::abs(p[k] - base[k]) < 1e-12);
    }
    const auto& s = *d.scenario;
    std::vector<EventIndex> bad{s.event_index("D"), s.event_index("A"), s.event_index("B"), s.event_index("C")};
    CHECK_THROWS_AS(evaluate_probabilities(d, bad), CausalError);
    CHECK_THROWS_AS(evaluate_probabilities(d, std::vector<EventIndex>{0, 1}), CausalError);
}

TEST_CASE("discarding a maximal event matches restriction") {
    const Diagram d = diamond_builtin();
    const Diagram without_d = discard_event(d, "D");
    CHECK(validate(without_d).empty());
    const auto& s = *d.scenario;
    EventSet cab = s.order().all();
    cab.erase(s.event_index("D"));
    CHECK(evaluate(without_d).table() == as_full_model(restrict_model(evaluate(d), cab)).table());
    const Diagram only_c = discard_event(discard_event(without_d, "A"), "B");
    CHECK(evaluate(only_c).table() ==
          as_full_model(restrict_model(evaluate(d), EventSet::single(s.event_index("C")))).table());
    CHECK_THROWS_AS(discard_event(d, "C"), CausalError);
    CHECK_THROWS_AS(discard_event(d, "Z"), CausalError);
}

TEST_CASE("random isometry diagrams are normalized and causal in floating point") {
    std::mt19937_64 rng(59);
    int tested = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& po : enumerate_posets(support::event_names(n))) {
            const auto s = support::binary(po);
            const Diagram d = random_isometry_diagram(s, rng);
            CHECK(validate(d).empty());
            const auto p = evaluate_probabilities(d);
            const JointSpace outs = JointSpace::outputs(*s, po.all());
            for (std::size_t r = 0; r * outs.size() < p.size(); ++r) {
                double sum = 0;
                for (std::size_t c = 0; c < outs.size(); ++c) {
                    CHECK(p[r * outs.size() + c] >= -1e-15);
                    sum += p[r * outs.size() + c];
                }
                CHECK(std::abs(sum - 1) < 1e-12);
            }
            CHECK(float_causal(*s, p, 1e-12));
            ++tested;
        }
    }
    CHECK(tested == 1 + 3 + 19);
}

TEST_CASE("random Clifford diagrams snap to causal models") {
    std::mt19937_64 rng(61);
    for (const auto& po : enumerate_posets(support::event_names(3))) {
        const auto s = support::binary(po);
        const Diagram d = random_clifford_diagram(s, rng);
        REQUIRE(validate(d).empty());
        const EmpiricalTable e = evaluate(d);
        CHECK(check_causality(e).causal());
    }
    const auto ternary = make_scenario(CausalScenario::uniform(discrete_order({"A"}), {"0", "1"}, {"0", "1", "2"}));
    CHECK_THROWS_AS(random_clifford_diagram(ternary, rng), CausalError);
}

}
