#include "causal/locale.hpp"

#include <algorithm>

namespace causal {

namespace {

std::uint32_t all_inputs(const CausalScenario& s, EventIndex e) {
    const std::size_t k = s.input_count(e);
    return k >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << k) - 1);
}

}  // namespace

std::vector<std::size_t> LocaleElement::subset_members(EventIndex e) const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = subsets_.at(e); b != 0; b &= b - 1) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
}

Locale::Locale(ScenarioPtr scenario) : scenario_(std::move(scenario)) {
    if (!scenario_) throw CausalError("locale: null scenario");
    if (!scenario_->order().is_partial_order()) {
        throw CausalError("the locale of inputs is only defined for definite (partially ordered) scenarios");
    }
    if (scenario_->size() > kMaxLowersetEvents) throw CausalError("locale: too many events");
}

void Locale::check(const LocaleElement& u) const {
    const auto& s = *scenario_;
    if (u.event_count() != s.size()) throw CausalError("locale element belongs to a different scenario");
    if (!s.order().is_lowerset(u.support())) throw CausalError("locale element support is not a lowerset");
    for (EventIndex e = 0; e < s.size(); ++e) {
        const std::uint32_t sub = u.subset(e);
        if ((sub & ~all_inputs(s, e)) != 0) throw CausalError("locale element uses unknown inputs");
        if (u.support().contains(e) != (sub != 0)) {
            throw CausalError("locale element subsets must be non-empty exactly on the support");
        }
    }
}

LocaleElement Locale::element(EventSet support, std::vector<std::uint32_t> subsets) const {
    LocaleElement u(support, std::move(subsets));
    check(u);
    return u;
}

LocaleElement Locale::from_subsets(std::vector<std::uint32_t> subsets) const {
    EventSet support;
    for (EventIndex e = 0; e < subsets.size(); ++e) {
        if (subsets[e] != 0) support.insert(e);
    }
    return element(support, std::move(subsets));
}

LocaleElement Locale::point(EventSet events, const Assignment& inputs) const {
    std::vector<std::uint32_t> subsets(scenario_->size(), 0);
    for (EventIndex e : events) subsets[e] = std::uint32_t{1} << inputs.at(e);
    return element(events, std::move(subsets));
}

LocaleElement Locale::top() const {
    std::vector<std::uint32_t> subsets(scenario_->size());
    for (EventIndex e = 0; e < subsets.size(); ++e) subsets[e] = all_inputs(*scenario_, e);
    return LocaleElement(scenario_->order().all(), std::move(subsets));
}

LocaleElement Locale::bottom() const {
    return LocaleElement(EventSet{}, std::vector<std::uint32_t>(scenario_->size(), 0));
}

bool Locale::leq(const LocaleElement& v, const LocaleElement& u) const {
    check(v);
    check(u);
    if (!v.support().subset_of(u.support())) return false;
    for (EventIndex e : v.support()) {
        if ((v.subset(e) & ~u.subset(e)) != 0) return false;
    }
    return true;
}

LocaleElement Locale::meet(const LocaleElement& u, const LocaleElement& v) const {
    check(u);
    check(v);
    // Pointwise intersections, dropping events where they empty out. The
    // surviving set need not be downward closed (an event can survive while
    // something below it empties), so the support is its lowerset interior.
    EventSet nonempty;
    for (EventIndex e : (u.support() & v.support())) {
        if ((u.subset(e) & v.subset(e)) != 0) nonempty.insert(e);
    }
    const EventSet support = scenario_->order().interior(nonempty);
    std::vector<std::uint32_t> subsets(scenario_->size(), 0);
    for (EventIndex e : support) subsets[e] = u.subset(e) & v.subset(e);
    return LocaleElement(support, std::move(subsets));
}

LocaleElement Locale::join(const LocaleElement& u, const LocaleElement& v) const {
    check(u);
    check(v);
    std::vector<std::uint32_t> subsets(scenario_->size(), 0);
    for (EventIndex e = 0; e < subsets.size(); ++e) subsets[e] = u.subset(e) | v.subset(e);
    return LocaleElement(u.support() | v.support(), std::move(subsets));
}

bool Locale::is_cover(const CoverSet& k) const {
    check(k.target);
    std::vector<std::uint32_t> unions(scenario_->size(), 0);
    for (const auto& part : k.parts) {
        if (!leq(part, k.target)) throw CausalError("cover part is not below the covered element");
        for (EventIndex e = 0; e < unions.size(); ++e) unions[e] |= part.subset(e);
    }
    return unions == k.target.subsets();
}

CoverSet Locale::global_cover() const {
    CoverSet k{top(), {}};
    const EventSet all = scenario_->order().all();
    const JointSpace joint = JointSpace::inputs(*scenario_, all);
    Assignment a(scenario_->size(), -1);
    for (std::size_t idx = 0; idx < joint.size(); ++idx) {
        joint.decode(idx, a);
        k.parts.push_back(point(all, a));
    }
    return k;
}

std::vector<LocaleElement> Locale::elements() const {
    const auto& s = *scenario_;
    std::vector<LocaleElement> out;
    for (EventSet lam : lowersets(s.order())) {
        const auto members = lam.members();
        // Odometer over non-empty subsets (masks 1 .. 2^k - 1) at each event.
        std::vector<std::uint32_t> subsets(s.size(), 0);
        for (EventIndex e : members) subsets[e] = 1;
        while (true) {
            out.emplace_back(lam, subsets);
            std::size_t pos = members.size();
            while (pos > 0) {
                const EventIndex e = members[pos - 1];
                if (subsets[e] < all_inputs(s, e)) {
                    ++subsets[e];
                    break;
                }
                subsets[e] = 1;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return out;
}

JointSpace Locale::input_space(const LocaleElement& u) const {
    std::vector<std::size_t> radix(scenario_->size(), 0);
    for (EventIndex e : u.support()) radix[e] = u.subset_size(e);
    return JointSpace(u.support(), std::move(radix));
}

std::vector<InputSite> Locale::varphi(const LocaleElement& u) const {
    check(u);
    std::vector<InputSite> out;
    for (EventIndex e : u.support()) {
        for (std::size_t i : u.subset_members(e)) out.push_back({i, e});
    }
    return out;
}

LocaleElement Locale::varphi_inverse(const std::vector<InputSite>& sites) const {
    std::vector<std::uint32_t> subsets(scenario_->size(), 0);
    for (const auto& site : sites) {
        if (site.event >= scenario_->size() || site.input >= scenario_->input_count(site.event)) {
            throw CausalError("varphi_inverse: input site outside the scenario");
        }
        subsets[site.event] |= std::uint32_t{1} << site.input;
    }
    EventSet support;
    for (EventIndex e = 0; e < subsets.size(); ++e) {
        if (subsets[e] != 0) support.insert(e);
    }
    if (!scenario_->order().is_lowerset(support)) {
        throw CausalError("varphi_inverse: the events carrying inputs do not form a lowerset");
    }
    return LocaleElement(support, std::move(subsets));
}

}  // namespace causal
