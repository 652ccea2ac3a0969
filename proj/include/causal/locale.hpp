#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "causal/scenario.hpp"

namespace causal {

/// An element of the locale of inputs: a lowerset support together with a
/// non-empty subset of inputs at each supported event.
///
/// Subsets are bitmasks over the event's input labels; events outside the
/// support carry the empty mask.
class LocaleElement {
public:
    LocaleElement() = default;
    LocaleElement(EventSet support, std::vector<std::uint32_t> subsets)
        : support_(support), subsets_(std::move(subsets)) {}

    EventSet support() const { return support_; }
    std::uint32_t subset(EventIndex e) const { return subsets_.at(e); }
    const std::vector<std::uint32_t>& subsets() const { return subsets_; }
    std::size_t subset_size(EventIndex e) const { return static_cast<std::size_t>(std::popcount(subsets_.at(e))); }
    /// Input indices of the subset at e, increasing.
    std::vector<std::size_t> subset_members(EventIndex e) const;
    std::size_t event_count() const { return subsets_.size(); }

    bool is_bottom() const { return support_.empty(); }

    bool operator==(const LocaleElement&) const = default;
    auto operator<=>(const LocaleElement&) const = default;

private:
    EventSet support_;
    std::vector<std::uint32_t> subsets_;
};

/// A candidate cover: parts expected to lie below the target.
struct CoverSet {
    LocaleElement target;
    std::vector<LocaleElement> parts;
};

/// An element of the disjoint union of input sets.
struct InputSite {
    std::size_t input;
    EventIndex event;
    bool operator==(const InputSite&) const = default;
    auto operator<=>(const InputSite& o) const {
        if (auto c = event <=> o.event; c != 0) return c;
        return input <=> o.input;
    }
};

/// The locale of inputs of a definite causal scenario.
class Locale {
public:
    explicit Locale(ScenarioPtr scenario);

    const CausalScenario& scenario() const { return *scenario_; }
    const ScenarioPtr& scenario_ptr() const { return scenario_; }

    /// Validated construction from a support and per-event subsets.
    LocaleElement element(EventSet support, std::vector<std::uint32_t> subsets) const;
    /// Builds an element from subsets alone; the support is read off the non-empty ones.
    LocaleElement from_subsets(std::vector<std::uint32_t> subsets) const;
    /// The element with singleton subsets {i_w} on the events of `events`.
    LocaleElement point(EventSet events, const Assignment& inputs) const;

    LocaleElement top() const;
    LocaleElement bottom() const;

    /// Throws unless u is an element of this locale.
    void check(const LocaleElement& u) const;

    bool leq(const LocaleElement& v, const LocaleElement& u) const;
    /// Greatest lower bound.
    LocaleElement meet(const LocaleElement& u, const LocaleElement& v) const;
    /// Least upper bound: pointwise union on the union of supports.
    LocaleElement join(const LocaleElement& u, const LocaleElement& v) const;

    /// Pointwise union condition; throws if some part is not below the target.
    bool is_cover(const CoverSet& k) const;
    /// The cover of the top element by all joint inputs.
    CoverSet global_cover() const;

    /// All elements, grouped by lowerset in lowerset order.
    std::vector<LocaleElement> elements() const;

    /// Joint inputs of u, with digits given as positions inside each subset.
    JointSpace input_space(const LocaleElement& u) const;

    /// The injective map into subsets of the disjoint union of inputs (sorted).
    std::vector<InputSite> varphi(const LocaleElement& u) const;
    /// Inverse of varphi; fails when the implied support is not a lowerset.
    LocaleElement varphi_inverse(const std::vector<InputSite>& sites) const;

private:
    ScenarioPtr scenario_;
};

}  // namespace causal
