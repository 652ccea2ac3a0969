#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "causal/order.hpp"

namespace causal {

/// Events with a (pre)order and finite non-empty input and output label sets.
///
/// Labels keep the order they were given in; that order is the canonical
/// ordering of inputs and outputs at each event.
class CausalScenario {
public:
    CausalScenario(Preorder order, std::vector<std::vector<std::string>> inputs,
                   std::vector<std::vector<std::string>> outputs);

    /// Same label set at every event, e.g. binary inputs and outputs.
    static CausalScenario uniform(Preorder order, std::vector<std::string> inputs,
                                  std::vector<std::string> outputs);

    const Preorder& order() const { return order_; }
    std::size_t size() const { return order_.size(); }
    const std::vector<std::string>& events() const { return order_.events(); }
    const std::string& event_name(EventIndex e) const { return order_.name(e); }
    EventIndex event_index(const std::string& name) const { return order_.index(name); }

    const std::vector<std::string>& inputs(EventIndex e) const { return inputs_.at(e); }
    const std::vector<std::string>& outputs(EventIndex e) const { return outputs_.at(e); }
    std::size_t input_count(EventIndex e) const { return inputs_.at(e).size(); }
    std::size_t output_count(EventIndex e) const { return outputs_.at(e).size(); }
    std::size_t input_index(EventIndex e, const std::string& label) const;
    std::size_t output_index(EventIndex e, const std::string& label) const;

    /// Same events and labels, different order.
    CausalScenario with_order(Preorder order) const;

    bool operator==(const CausalScenario&) const = default;

private:
    Preorder order_;
    std::vector<std::vector<std::string>> inputs_;
    std::vector<std::vector<std::string>> outputs_;
};

using ScenarioPtr = std::shared_ptr<const CausalScenario>;

inline ScenarioPtr make_scenario(CausalScenario s) {
    return std::make_shared<const CausalScenario>(std::move(s));
}

/// A joint value: one digit per scenario event, -1 where the event is absent.
using Assignment = std::vector<int>;

/// Mixed-radix indexing of joint values over a set of events.
///
/// Events are taken in canonical order with the first event most
/// significant, so index order is lexicographic order.
class JointSpace {
public:
    JointSpace() = default;
    JointSpace(EventSet events, std::vector<std::size_t> radix_per_event);

    /// Joint inputs (or outputs) of a scenario over `events`.
    static JointSpace inputs(const CausalScenario& s, EventSet events);
    static JointSpace outputs(const CausalScenario& s, EventSet events);

    EventSet events() const { return events_; }
    std::size_t size() const { return size_; }
    std::size_t radix(EventIndex e) const { return radix_.at(e); }

    /// Fills the digits of `events` in an assignment of length n (others untouched).
    void decode(std::size_t index, Assignment& out) const;
    Assignment decode(std::size_t index, std::size_t n) const;
    /// Reads the digits of `events` from an assignment.
    std::size_t encode(const Assignment& a) const;

private:
    EventSet events_;
    std::array<std::size_t, EventSet::kMaxEvents> radix_{};   // indexed by event, 0 for absent events
    std::array<std::size_t, EventSet::kMaxEvents> stride_{};  // indexed by event
    std::size_t size_ = 1;
};

/// For each index of `from`, the index of its projection onto `to`
/// (whose events must be a subset of `from`'s).
std::vector<std::size_t> project_indices(const JointSpace& from, const JointSpace& to, std::size_t n);

/// Labels of a joint value joined by ",", in canonical event order.
std::string joint_input_string(const CausalScenario& s, EventSet events, const Assignment& a);
std::string joint_output_string(const CausalScenario& s, EventSet events, const Assignment& a);

}  // namespace causal
