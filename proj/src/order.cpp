#include "causal/order.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace causal {

std::vector<EventIndex> EventSet::members() const {
    std::vector<EventIndex> out;
    out.reserve(size());
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
        out.push_back(static_cast<EventIndex>(std::countr_zero(b)));
    }
    return out;
}

std::string to_string(CausalRelationship r) {
    switch (r) {
        case CausalRelationship::unrelated: return "unrelated";
        case CausalRelationship::precedes: return "precedes";
        case CausalRelationship::succeeds: return "succeeds";
        case CausalRelationship::indefinite: return "indefinite";
    }
    return "?";
}

namespace {

std::vector<std::string> canonical_names(std::vector<std::string> events) {
    std::sort(events.begin(), events.end());
    if (std::adjacent_find(events.begin(), events.end()) != events.end()) {
        throw CausalError("duplicate event name");
    }
    for (const auto& e : events) {
        if (e.empty()) throw CausalError("event names must be non-empty");
    }
    if (events.size() > EventSet::kMaxEvents) {
        throw CausalError("too many events (max 32)");
    }
    return events;
}

// Warshall closure over downset masks.
void close_transitively(std::vector<EventSet>& down) {
    const std::size_t n = down.size();
    for (std::size_t y = 0; y < n; ++y) down[y].insert(y);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t y = 0; y < n; ++y) {
            if (down[y].contains(k)) down[y] = down[y] | down[k];
        }
    }
}

}  // namespace

Preorder::Preorder(std::vector<std::string> events) : events_(canonical_names(std::move(events))) {
    down_.resize(events_.size());
    for (std::size_t i = 0; i < events_.size(); ++i) down_[i] = EventSet::single(i);
}

EventIndex Preorder::index(const std::string& name) const {
    auto it = std::lower_bound(events_.begin(), events_.end(), name);
    if (it == events_.end() || *it != name) throw CausalError("unknown event '" + name + "'");
    return static_cast<EventIndex>(it - events_.begin());
}

bool Preorder::has_event(const std::string& name) const {
    return std::binary_search(events_.begin(), events_.end(), name);
}

EventSet Preorder::upset(EventIndex e) const {
    EventSet up;
    for (std::size_t y = 0; y < size(); ++y) {
        if (leq(e, y)) up.insert(y);
    }
    return up;
}

bool Preorder::is_partial_order() const {
    for (std::size_t x = 0; x < size(); ++x) {
        for (std::size_t y = x + 1; y < size(); ++y) {
            if (leq(x, y) && leq(y, x)) return false;
        }
    }
    return true;
}

bool Preorder::is_discrete() const {
    for (std::size_t y = 0; y < size(); ++y) {
        if (down_[y] != EventSet::single(y)) return false;
    }
    return true;
}

bool Preorder::is_lowerset(EventSet s) const {
    for (EventIndex e : s.members()) {
        if (!down_[e].subset_of(s)) return false;
    }
    return true;
}

EventSet Preorder::interior(EventSet s) const {
    EventSet out;
    for (EventIndex e : s.members()) {
        if (down_[e].subset_of(s)) out.insert(e);
    }
    return out;
}

EventSet Preorder::lower_closure(EventSet s) const {
    EventSet out;
    for (EventIndex e : s.members()) out = out | down_[e];
    return out;
}

std::size_t Preorder::relation_size() const {
    std::size_t n = 0;
    for (const auto& d : down_) n += d.size();
    return n;
}

std::vector<std::pair<EventIndex, EventIndex>> Preorder::strict_pairs() const {
    std::vector<std::pair<EventIndex, EventIndex>> out;
    for (std::size_t x = 0; x < size(); ++x) {
        for (std::size_t y = 0; y < size(); ++y) {
            if (x != y && leq(x, y)) out.emplace_back(x, y);
        }
    }
    return out;
}

Preorder Preorder::restrict_to(EventSet keep) const {
    std::vector<std::string> names;
    std::vector<EventIndex> old;
    for (EventIndex e : keep.members()) {
        if (e >= size()) throw CausalError("restrict_to: event index out of range");
        names.push_back(events_[e]);
        old.push_back(e);
    }
    std::vector<EventSet> down(old.size());
    for (std::size_t y = 0; y < old.size(); ++y) {
        for (std::size_t x = 0; x < old.size(); ++x) {
            if (leq(old[x], old[y])) down[y].insert(x);
        }
    }
    return from_relation(std::move(names), down);
}

std::string Preorder::describe() const {
    auto pairs = strict_pairs();
    if (pairs.empty()) return "discrete";
    std::string out;
    for (const auto& [x, y] : pairs) {
        if (!out.empty()) out += ", ";
        out += events_[x] + "<" + events_[y];
    }
    return out;
}

Preorder from_relation(std::vector<std::string> events, const std::vector<EventSet>& downsets) {
    if (downsets.size() != events.size()) throw CausalError("relation size mismatch");
    Preorder po;
    po.events_ = std::move(events);
    po.down_ = downsets;
    const EventSet all = EventSet::full(po.events_.size());
    for (auto& d : po.down_) {
        if (!d.subset_of(all)) throw CausalError("relation refers to unknown event");
    }
    close_transitively(po.down_);
    return po;
}

Preorder closure(const std::vector<std::string>& events,
                 const std::vector<std::pair<std::string, std::string>>& generators) {
    Preorder po(events);
    for (const auto& [x, y] : generators) {
        po.down_[po.index(y)].insert(po.index(x));
    }
    close_transitively(po.down_);
    return po;
}

Preorder discrete_order(std::vector<std::string> events) { return Preorder(std::move(events)); }

Preorder indiscrete_order(std::vector<std::string> events) {
    Preorder po(std::move(events));
    std::vector<EventSet> down(po.size(), po.all());
    return from_relation(po.events(), down);
}

Preorder chain_order(const std::vector<std::string>& sequence) {
    std::vector<std::pair<std::string, std::string>> gens;
    for (std::size_t k = 1; k < sequence.size(); ++k) gens.emplace_back(sequence[k - 1], sequence[k]);
    return closure(sequence, gens);
}

CausalRelationship classify(const Preorder& po, EventIndex x, EventIndex y) {
    if (x == y) throw CausalError("classify: events must be distinct");
    if (x >= po.size() || y >= po.size()) throw CausalError("classify: event out of range");
    const bool xy = po.leq(x, y);
    const bool yx = po.leq(y, x);
    if (xy && yx) return CausalRelationship::indefinite;
    if (xy) return CausalRelationship::precedes;
    if (yx) return CausalRelationship::succeeds;
    return CausalRelationship::unrelated;
}

CausalRelationship classify(const Preorder& po, const std::string& x, const std::string& y) {
    return classify(po, po.index(x), po.index(y));
}

std::vector<EventSet> lowersets(const Preorder& po) {
    if (po.size() > kMaxLowersetEvents) {
        throw CausalError("lowerset enumeration is limited to 16 events");
    }
    // Every lowerset is a union of principal downsets; grow from the empty set.
    std::unordered_set<std::uint32_t> seen{0};
    std::vector<EventSet> frontier{EventSet{}};
    std::vector<EventSet> all{EventSet{}};
    while (!frontier.empty()) {
        std::vector<EventSet> next;
        for (EventSet l : frontier) {
            for (EventIndex e = 0; e < po.size(); ++e) {
                if (l.contains(e)) continue;
                EventSet grown = l | po.downset(e);
                if (seen.insert(grown.bits()).second) {
                    next.push_back(grown);
                    all.push_back(grown);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](EventSet a, EventSet b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.members() < b.members();
    });
    return all;
}

EventSet downset(const Preorder& po, const std::string& event) { return po.downset(po.index(event)); }

namespace {

// Extends preorders on the first k events by one event at a time. The new
// event k picks a lowerset D (events below it) and an upset U (events above
// it) of the old order, with d <= u for every d in D, u in U.
void extend_preorders(const std::vector<std::string>& names, std::vector<EventSet>& down, std::size_t k,
                      bool posets_only, std::vector<Preorder>& out) {
    const std::size_t n = names.size();
    if (k == n) {
        out.push_back(from_relation(names, down));
        return;
    }
    const std::uint32_t limit = std::uint32_t{1} << k;
    auto leq = [&](std::size_t x, std::size_t y) { return down[y].contains(x); };
    for (std::uint32_t dbits = 0; dbits < limit; ++dbits) {
        EventSet below(dbits);
        bool lower = true;
        for (EventIndex d : below.members()) lower = lower && down[d].subset_of(below);
        if (!lower) continue;
        for (std::uint32_t ubits = 0; ubits < limit; ++ubits) {
            EventSet above(ubits);
            if (posets_only && !(below & above).empty()) continue;
            bool ok = true;
            for (EventIndex u : above.members()) {
                for (std::size_t y = 0; y < k && ok; ++y) {
                    if (leq(u, y) && !above.contains(y)) ok = false;
                }
                for (EventIndex d : below.members()) {
                    if (!leq(d, u)) ok = false;
                }
                if (!ok) break;
            }
            if (!ok) continue;
            std::vector<EventSet> saved = down;
            down[k] = below | EventSet::single(k);
            for (EventIndex u : above.members()) down[u].insert(k);
            extend_preorders(names, down, k + 1, posets_only, out);
            down = std::move(saved);
        }
    }
}

std::vector<Preorder> enumerate(const std::vector<std::string>& events, bool posets_only) {
    if (events.size() > kMaxEnumerationEvents) {
        throw CausalError("preorder enumeration is limited to 5 events");
    }
    Preorder base(events);
    std::vector<EventSet> down(base.size());
    std::vector<Preorder> out;
    extend_preorders(base.events(), down, 0, posets_only, out);
    std::stable_sort(out.begin(), out.end(), [](const Preorder& a, const Preorder& b) {
        return a.relation_size() < b.relation_size();
    });
    return out;
}

}  // namespace

std::vector<Preorder> enumerate_preorders(const std::vector<std::string>& events) {
    return enumerate(events, false);
}

std::vector<Preorder> enumerate_posets(const std::vector<std::string>& events) {
    return enumerate(events, true);
}

}  // namespace causal
