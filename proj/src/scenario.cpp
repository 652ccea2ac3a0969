#include "causal/scenario.hpp"

#include <algorithm>
#include <set>

namespace causal {

namespace {

void check_labels(const std::vector<std::vector<std::string>>& labels, std::size_t n, const char* what) {
    if (labels.size() != n) throw CausalError(std::string(what) + ": one label set per event required");
    for (const auto& set : labels) {
        if (set.empty()) throw CausalError(std::string(what) + " sets must be non-empty");
        if (set.size() > 32) throw CausalError(std::string(what) + " sets are limited to 32 labels");
        std::set<std::string> unique(set.begin(), set.end());
        if (unique.size() != set.size()) throw CausalError(std::string("duplicate ") + what + " label");
        for (const auto& l : set) {
            if (l.empty() || l.find(',') != std::string::npos) {
                throw CausalError(std::string(what) + " labels must be non-empty and contain no ','");
            }
        }
    }
}

std::size_t find_label(const std::vector<std::string>& labels, const std::string& label, const char* what) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw CausalError(std::string("unknown ") + what + " label '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

CausalScenario::CausalScenario(Preorder order, std::vector<std::vector<std::string>> inputs,
                               std::vector<std::vector<std::string>> outputs)
    : order_(std::move(order)), inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    check_labels(inputs_, order_.size(), "input");
    check_labels(outputs_, order_.size(), "output");
}

CausalScenario CausalScenario::uniform(Preorder order, std::vector<std::string> inputs,
                                       std::vector<std::string> outputs) {
    const std::size_t n = order.size();
    return CausalScenario(std::move(order), std::vector<std::vector<std::string>>(n, inputs),
                          std::vector<std::vector<std::string>>(n, outputs));
}

std::size_t CausalScenario::input_index(EventIndex e, const std::string& label) const {
    return find_label(inputs(e), label, "input");
}

std::size_t CausalScenario::output_index(EventIndex e, const std::string& label) const {
    return find_label(outputs(e), label, "output");
}

CausalScenario CausalScenario::with_order(Preorder order) const {
    if (order.events() != events()) throw CausalError("order events do not match scenario events");
    return CausalScenario(std::move(order), inputs_, outputs_);
}

JointSpace::JointSpace(EventSet events, std::vector<std::size_t> radix_per_event) : events_(events) {
    // Last event varies fastest.
    for (EventIndex e = EventSet::kMaxEvents; e-- > 0;) {
        if (!events.contains(e)) continue;
        if (e >= radix_per_event.size() || radix_per_event[e] == 0) throw CausalError("joint space: missing radix");
        radix_[e] = radix_per_event[e];
        stride_[e] = size_;
        size_ *= radix_[e];
    }
}

JointSpace JointSpace::inputs(const CausalScenario& s, EventSet events) {
    std::vector<std::size_t> radix(s.size(), 0);
    for (EventIndex e : events.members()) radix.at(e) = s.input_count(e);
    return JointSpace(events, std::move(radix));
}

JointSpace JointSpace::outputs(const CausalScenario& s, EventSet events) {
    std::vector<std::size_t> radix(s.size(), 0);
    for (EventIndex e : events.members()) radix.at(e) = s.output_count(e);
    return JointSpace(events, std::move(radix));
}

void JointSpace::decode(std::size_t index, Assignment& out) const {
    for (EventIndex e : events_) {
        out[e] = static_cast<int>((index / stride_[e]) % radix_[e]);
    }
}

Assignment JointSpace::decode(std::size_t index, std::size_t n) const {
    Assignment a(n, -1);
    decode(index, a);
    return a;
}

std::size_t JointSpace::encode(const Assignment& a) const {
    std::size_t index = 0;
    for (EventIndex e : events_) index += static_cast<std::size_t>(a[e]) * stride_[e];
    return index;
}

std::vector<std::size_t> project_indices(const JointSpace& from, const JointSpace& to, std::size_t n) {
    if (!to.events().subset_of(from.events())) throw CausalError("projection onto events outside the space");
    std::vector<std::size_t> out(from.size());
    Assignment a(n, -1);
    for (std::size_t k = 0; k < from.size(); ++k) {
        from.decode(k, a);
        out[k] = to.encode(a);
    }
    return out;
}

std::string joint_input_string(const CausalScenario& s, EventSet events, const Assignment& a) {
    std::string out;
    bool first = true;
    for (EventIndex e : events.members()) {
        if (!first) out += ',';
        first = false;
        out += s.inputs(e).at(static_cast<std::size_t>(a.at(e)));
    }
    return out;
}

std::string joint_output_string(const CausalScenario& s, EventSet events, const Assignment& a) {
    std::string out;
    bool first = true;
    for (EventIndex e : events.members()) {
        if (!first) out += ',';
        first = false;
        out += s.outputs(e).at(static_cast<std::size_t>(a.at(e)));
    }
    return out;
}

}  // namespace causal
