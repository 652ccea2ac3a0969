#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causal/conditional.hpp"
#include "causal/distributions.hpp"

namespace causal {

/// One group of causality equations: the marginals on `lowerset` of rows
/// `row_i` and `row_j` must coincide, for every joint output on the lowerset.
struct EquationBlock {
    EventSet lowerset;
    std::size_t row_i = 0;
    std::size_t row_j = 0;
};

/// Reduced causality equations for tables over `support` (a lowerset of
/// `order`): pairs i < j in lexicographic row order, each with the largest
/// lowerset on which the two joint inputs agree.
std::vector<EquationBlock> reduced_equation_blocks(const CausalScenario& scenario, const Preorder& order,
                                                   EventSet support);
/// The unreduced system: every lowerset inside the support, every ordered
/// pair of distinct rows agreeing on it.
std::vector<EquationBlock> full_equation_blocks(const CausalScenario& scenario, const Preorder& order,
                                                EventSet support);

/// A failed causality equation with the two marginal values.
struct Violation {
    EventSet lowerset;
    Assignment output;  // joint output on the lowerset
    std::size_t row_i = 0;
    std::size_t row_j = 0;
    Rational lhs;
    Rational rhs;
};

struct CausalityVerdict {
    std::vector<Violation> violations;
    bool causal() const { return violations.empty(); }
};

/// Formats a violation as (lowerset, o', i, j, lhs, rhs) with labels.
std::string describe(const CausalScenario& scenario, EventSet support, const Violation& v);

namespace detail {

void check_same_events(const CausalScenario& scenario, const Preorder& order);

template <Semiring R>
std::vector<R> marginal_row(const ConditionalDistribution<R>& d, std::size_t row, const JointSpace& target,
                            const std::vector<std::size_t>& projection) {
    std::vector<R> out(target.size(), R::zero());
    for (std::size_t col = 0; col < d.cols(); ++col) out[projection[col]] = out[projection[col]] + d.at(row, col);
    return out;
}

template <Semiring R>
CausalityVerdict check_blocks(const ConditionalDistribution<R>& d, const std::vector<EquationBlock>& blocks) {
    CausalityVerdict verdict;
    const auto& s = d.scenario();
    std::map<std::uint32_t, std::pair<JointSpace, std::vector<std::size_t>>> projections;
    for (const auto& block : blocks) {
        auto it = projections.find(block.lowerset.bits());
        if (it == projections.end()) {
            JointSpace target = JointSpace::outputs(s, block.lowerset);
            auto proj = project_indices(d.output_space(), target, s.size());
            it = projections.emplace(block.lowerset.bits(), std::make_pair(std::move(target), std::move(proj))).first;
        }
        const auto& [target, proj] = it->second;
        const auto mi = marginal_row(d, block.row_i, target, proj);
        const auto mj = marginal_row(d, block.row_j, target, proj);
        for (std::size_t o = 0; o < target.size(); ++o) {
            if (!(mi[o] == mj[o])) {
                verdict.violations.push_back({block.lowerset, target.decode(o, s.size()), block.row_i, block.row_j,
                                              discrepancy_value(mi[o]), discrepancy_value(mj[o])});
            }
        }
    }
    return verdict;
}

}  // namespace detail

/// Checks the causality equations of `order` using the reduced system.
template <Semiring R>
CausalityVerdict check_causality(const ConditionalDistribution<R>& d, const Preorder& order) {
    detail::check_same_events(d.scenario(), order);
    return detail::check_blocks(d, reduced_equation_blocks(d.scenario(), order, d.support()));
}

template <Semiring R>
CausalityVerdict check_causality(const ConditionalDistribution<R>& d) {
    return check_causality(d, d.scenario().order());
}

/// Same verdict as check_causality, via the unreduced system.
template <Semiring R>
CausalityVerdict check_causality_full(const ConditionalDistribution<R>& d, const Preorder& order) {
    detail::check_same_events(d.scenario(), order);
    return detail::check_blocks(d, full_equation_blocks(d.scenario(), order, d.support()));
}

/// Causality against the discrete order on the same events.
template <Semiring R>
CausalityVerdict check_no_signalling(const ConditionalDistribution<R>& d) {
    return check_causality(d, discrete_order(d.scenario().events()));
}

/// Marginal on the lowerset mu, re-indexed by joint inputs on mu. Throws if
/// the marginal depends on inputs outside mu.
template <Semiring R>
ConditionalDistribution<R> restrict_model(const ConditionalDistribution<R>& d, EventSet mu, const Preorder& order) {
    detail::check_same_events(d.scenario(), order);
    if (!order.is_lowerset(mu)) throw CausalError("restrict_model: target is not a lowerset");
    if (!mu.subset_of(d.support())) throw CausalError("restrict_model: target is not inside the support");
    const auto& s = d.scenario();
    const JointSpace in_mu = JointSpace::inputs(s, mu);
    const JointSpace out_mu = JointSpace::outputs(s, mu);
    const auto out_proj = project_indices(d.output_space(), out_mu, s.size());
    const auto in_proj = project_indices(d.input_space(), in_mu, s.size());
    std::vector<std::optional<std::vector<R>>> rows(in_mu.size());
    for (std::size_t row = 0; row < d.rows(); ++row) {
        auto m = detail::marginal_row(d, row, out_mu, out_proj);
        auto& slot = rows[in_proj[row]];
        if (!slot) {
            slot = std::move(m);
        } else if (*slot != m) {
            throw CausalError("restrict_model: marginal on the lowerset depends on discarded inputs (row " +
                              joint_input_string(s, d.support(), d.input(row)) + ")");
        }
    }
    std::vector<R> table;
    table.reserve(in_mu.size() * out_mu.size());
    for (auto& r : rows) table.insert(table.end(), r->begin(), r->end());
    return ConditionalDistribution<R>(d.scenario_ptr(), mu, std::move(table));
}

template <Semiring R>
ConditionalDistribution<R> restrict_model(const ConditionalDistribution<R>& d, EventSet mu) {
    return restrict_model(d, mu, d.scenario().order());
}

/// Inputs fixed on a lowerset: `assignment` gives an input index per fixed
/// event (-1 elsewhere). Fixed events not in `discard` stay as output
/// columns with a single input label; discarded outputs are marginalized.
template <Semiring R>
ConditionalDistribution<R> fix_inputs(const ConditionalDistribution<R>& d, const Preorder& order,
                                      const Assignment& assignment, EventSet discard) {
    const auto& s = d.scenario();
    detail::check_same_events(s, order);
    if (d.support() != order.all()) throw CausalError("fix_inputs: the distribution must cover all events");
    if (assignment.size() != s.size()) throw CausalError("fix_inputs: assignment size mismatch");
    EventSet fixed;
    for (EventIndex e = 0; e < s.size(); ++e) {
        if (assignment[e] < 0) continue;
        if (static_cast<std::size_t>(assignment[e]) >= s.input_count(e)) throw CausalError("fix_inputs: input out of range");
        fixed.insert(e);
    }
    if (!order.is_lowerset(fixed)) throw CausalError("fix_inputs: fixed events do not form a lowerset");
    if (!discard.subset_of(fixed)) throw CausalError("fix_inputs: only fixed events can be discarded");

    const EventSet kept = order.all() - discard;
    const auto kept_members = kept.members();
    std::vector<std::vector<std::string>> inputs, outputs;
    for (EventIndex e : kept_members) {
        if (fixed.contains(e)) {
            inputs.push_back({s.inputs(e)[static_cast<std::size_t>(assignment[e])]});
        } else {
            inputs.push_back(s.inputs(e));
        }
        outputs.push_back(s.outputs(e));
    }
    auto reduced = make_scenario(CausalScenario(order.restrict_to(kept), std::move(inputs), std::move(outputs)));

    const std::size_t n = s.size();
    auto to_old = [&](const Assignment& small) {
        Assignment big(n, -1);
        for (std::size_t k = 0; k < kept_members.size(); ++k) big[kept_members[k]] = small[k];
        return big;
    };
    const JointSpace new_in = JointSpace::inputs(*reduced, reduced->order().all());
    const JointSpace new_out = JointSpace::outputs(*reduced, reduced->order().all());
    const JointSpace old_kept_out = JointSpace::outputs(s, kept);
    const auto out_proj = project_indices(d.output_space(), old_kept_out, n);
    std::vector<R> table(new_in.size() * new_out.size(), R::zero());
    for (std::size_t r = 0; r < new_in.size(); ++r) {
        Assignment old_in = to_old(new_in.decode(r, kept_members.size()));
        for (EventIndex e : fixed.members()) old_in[e] = assignment[e];
        const std::size_t old_row = d.input_space().encode(old_in);
        // Kept output columns share their index order with the reduced scenario.
        for (std::size_t col = 0; col < d.cols(); ++col) {
            R& cell = table[r * new_out.size() + out_proj[col]];
            cell = cell + d.at(old_row, col);
        }
    }
    return ConditionalDistribution<R>(reduced, std::move(table));
}

/// One distribution per joint input, on the sections with singleton domain {i}.
template <Semiring R>
using CompatibleFamily = std::vector<SectionDistribution<R>>;

/// Raised when a family fails compatibility on the meet of two members.
class IncompatibleFamily : public CausalError {
public:
    IncompatibleFamily(std::size_t row_i, std::size_t row_j, LocaleElement overlap, const std::string& what)
        : CausalError(what), row_i(row_i), row_j(row_j), overlap(std::move(overlap)) {}
    std::size_t row_i;
    std::size_t row_j;
    LocaleElement overlap;
};

template <Semiring R>
CompatibleFamily<R> to_compatible_family(const Locale& locale, const ConditionalDistribution<R>& e) {
    if (!(locale.scenario() == e.scenario()) || e.support() != locale.scenario().order().all()) {
        throw CausalError("to_compatible_family: model does not match the locale's scenario");
    }
    const EventSet all = e.support();
    CompatibleFamily<R> family;
    family.reserve(e.rows());
    for (std::size_t row = 0; row < e.rows(); ++row) {
        const LocaleElement base = locale.point(all, e.input(row));
        std::map<CausalSection, R> weights;
        for (std::size_t col = 0; col < e.cols(); ++col) {
            if (e.at(row, col) == R::zero()) continue;
            weights.emplace(from_table(locale, FlatTable{base, {col}}), e.at(row, col));
        }
        family.emplace_back(base, std::move(weights));
    }
    return family;
}

template <Semiring R>
ConditionalDistribution<R> from_compatible_family(const Locale& locale, const CompatibleFamily<R>& family) {
    const auto& s = locale.scenario();
    const EventSet all = s.order().all();
    const JointSpace ins = JointSpace::inputs(s, all);
    const JointSpace outs = JointSpace::outputs(s, all);
    if (family.size() != ins.size()) throw CausalError("compatible family must have one member per joint input");
    for (std::size_t row = 0; row < ins.size(); ++row) {
        if (family[row].base() != locale.point(all, ins.decode(row, s.size()))) {
            throw CausalError("compatible family member " + std::to_string(row) + " is not based at its joint input");
        }
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const LocaleElement overlap = locale.meet(family[i].base(), family[j].base());
            if (!(marginalize(locale, family[i], overlap) == marginalize(locale, family[j], overlap))) {
                throw IncompatibleFamily(i, j, overlap,
                                         "family members " + joint_input_string(s, all, ins.decode(i, s.size())) +
                                             " and " + joint_input_string(s, all, ins.decode(j, s.size())) +
                                             " disagree on their overlap");
            }
        }
    }
    std::vector<R> table(ins.size() * outs.size(), R::zero());
    for (std::size_t row = 0; row < ins.size(); ++row) {
        for (const auto& [f, w] : family[row].weights()) {
            table[row * outs.size() + to_table(locale, f).outputs.at(0)] = w;
        }
    }
    return ConditionalDistribution<R>(locale.scenario_ptr(), std::move(table));
}

}  // namespace causal
