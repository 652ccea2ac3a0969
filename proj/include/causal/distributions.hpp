#pragma once

#include <map>

#include "causal/conditional.hpp"
#include "causal/sections.hpp"

namespace causal {

/// A finitely supported, normalized R-distribution on the sections over `base`.
/// Absent sections have weight zero.
template <Semiring R>
class SectionDistribution {
public:
    SectionDistribution(LocaleElement base, std::map<CausalSection, R> weights) : base_(std::move(base)) {
        R total = R::zero();
        for (auto& [f, w] : weights) {
            if (f.domain() != base_) throw CausalError("section distribution: section not based at the base element");
            total = total + w;
            if (!(w == R::zero())) weights_.emplace(f, std::move(w));
        }
        if (!(total == R::one())) throw CausalError("section distribution is not normalized (total " + total.to_string() + ")");
    }

    static SectionDistribution point_mass(const CausalSection& f) {
        return SectionDistribution(f.domain(), {{f, R::one()}});
    }

    const LocaleElement& base() const { return base_; }
    const std::map<CausalSection, R>& weights() const { return weights_; }
    R weight(const CausalSection& f) const {
        auto it = weights_.find(f);
        return it == weights_.end() ? R::zero() : it->second;
    }

    bool operator==(const SectionDistribution&) const = default;

private:
    LocaleElement base_;
    std::map<CausalSection, R> weights_;
};

/// Pushforward along restriction to v <= base(d).
template <Semiring R>
SectionDistribution<R> marginalize(const Locale& locale, const SectionDistribution<R>& d, const LocaleElement& v) {
    if (!locale.leq(v, d.base())) throw CausalError("marginalize: target is not below the distribution's base");
    std::map<CausalSection, R> out;
    for (const auto& [f, w] : d.weights()) {
        auto [it, fresh] = out.try_emplace(restrict(locale, f, v), w);
        if (!fresh) it->second = it->second + w;
    }
    return SectionDistribution<R>(v, std::move(out));
}

/// The deterministic conditional distribution of a causal section on the top element.
template <Semiring R>
ConditionalDistribution<R> delta(const Locale& locale, const CausalSection& f) {
    if (f.domain() != locale.top()) throw CausalError("delta: section must be defined on all joint inputs");
    const FlatTable flat = to_table(locale, f);
    // Sections are causal by construction; the flat form is re-checked anyway.
    if (!is_causal(locale, flat)) throw CausalError("delta: section is not causal");
    const JointSpace outs = JointSpace::outputs(locale.scenario(), f.domain().support());
    std::vector<R> table(flat.outputs.size() * outs.size(), R::zero());
    for (std::size_t row = 0; row < flat.outputs.size(); ++row) table[row * outs.size() + flat.outputs[row]] = R::one();
    return ConditionalDistribution<R>(locale.scenario_ptr(), std::move(table));
}

/// The mixture sum_f p(f) delta_f of causal sections on the top element.
template <Semiring R>
ConditionalDistribution<R> convex_mix(const Locale& locale, const std::map<CausalSection, R>& weights) {
    const LocaleElement top = locale.top();
    R total = R::zero();
    for (const auto& [f, w] : weights) {
        if (f.domain() != top) throw CausalError("convex_mix: sections must be defined on all joint inputs");
        total = total + w;
    }
    if (!(total == R::one())) throw CausalError("convex_mix: weights are not normalized (total " + total.to_string() + ")");
    const JointSpace outs = JointSpace::outputs(locale.scenario(), top.support());
    const std::size_t rows = locale.input_space(top).size();
    std::vector<R> table(rows * outs.size(), R::zero());
    for (const auto& [f, w] : weights) {
        const FlatTable flat = to_table(locale, f);
        for (std::size_t row = 0; row < rows; ++row) {
            R& cell = table[row * outs.size() + flat.outputs[row]];
            cell = cell + w;
        }
    }
    return ConditionalDistribution<R>(locale.scenario_ptr(), std::move(table));
}

}  // namespace causal
