#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace causal {

/// Thrown for malformed arguments (unknown names, bad sizes, violated preconditions).
class CausalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using EventIndex = std::size_t;

/// A set of events, as a bitmask over canonical event indices.
class EventSet {
public:
    static constexpr std::size_t kMaxEvents = 32;

    constexpr EventSet() = default;
    constexpr explicit EventSet(std::uint32_t bits) : bits_(bits) {}

    static constexpr EventSet full(std::size_t n) {
        return EventSet(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
    }
    static constexpr EventSet single(EventIndex e) { return EventSet(std::uint32_t{1} << e); }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool contains(EventIndex e) const { return (bits_ >> e) & 1u; }
    constexpr bool subset_of(EventSet other) const { return (bits_ & ~other.bits_) == 0; }

    constexpr void insert(EventIndex e) { bits_ |= std::uint32_t{1} << e; }
    constexpr void erase(EventIndex e) { bits_ &= ~(std::uint32_t{1} << e); }

    constexpr EventSet operator|(EventSet o) const { return EventSet(bits_ | o.bits_); }
    constexpr EventSet operator&(EventSet o) const { return EventSet(bits_ & o.bits_); }
    constexpr EventSet operator-(EventSet o) const { return EventSet(bits_ & ~o.bits_); }

    /// Member indices in increasing (canonical) order.
    std::vector<EventIndex> members() const;

    /// Allocation-free iteration over members in increasing order.
    class iterator {
    public:
        using value_type = EventIndex;
        using difference_type = std::ptrdiff_t;
        constexpr iterator() = default;
        constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
        constexpr EventIndex operator*() const { return static_cast<EventIndex>(std::countr_zero(rest_)); }
        constexpr iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        constexpr iterator operator++(int) {
            iterator old = *this;
            ++*this;
            return old;
        }
        constexpr bool operator==(const iterator&) const = default;

    private:
        std::uint32_t rest_ = 0;
    };
    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    constexpr bool operator==(const EventSet&) const = default;
    constexpr auto operator<=>(const EventSet&) const = default;

private:
    std::uint32_t bits_ = 0;
};

enum class CausalRelationship { unrelated, precedes, succeeds, indefinite };

std::string to_string(CausalRelationship r);

/// A reflexive, transitive relation on named events.
///
/// Events are kept in canonical (lexicographic) name order; the relation is
/// stored fully closed as one downset mask per event.
class Preorder {
public:
    Preorder() = default;

    /// Discrete order on the given names.
    explicit Preorder(std::vector<std::string> events);

    std::size_t size() const { return events_.size(); }
    const std::vector<std::string>& events() const { return events_; }
    const std::string& name(EventIndex e) const { return events_.at(e); }
    EventIndex index(const std::string& name) const;
    bool has_event(const std::string& name) const;

    bool leq(EventIndex x, EventIndex y) const { return down_[y].contains(x); }
    EventSet downset(EventIndex e) const { return down_.at(e); }
    EventSet upset(EventIndex e) const;
    EventSet all() const { return EventSet::full(size()); }

    bool is_partial_order() const;
    bool is_discrete() const;
    bool is_lowerset(EventSet s) const;
    /// Largest lowerset contained in s.
    EventSet interior(EventSet s) const;
    /// Smallest lowerset containing s.
    EventSet lower_closure(EventSet s) const;

    /// Number of pairs (x, y) with x <= y, including the diagonal.
    std::size_t relation_size() const;
    /// Off-diagonal pairs x <= y, by canonical indices.
    std::vector<std::pair<EventIndex, EventIndex>> strict_pairs() const;

    /// The induced order on a subset of events.
    Preorder restrict_to(EventSet keep) const;

    /// Compact human-readable form, e.g. "A<B, B<A" or "discrete".
    std::string describe() const;

    bool operator==(const Preorder&) const = default;

private:
    friend Preorder closure(const std::vector<std::string>&,
                            const std::vector<std::pair<std::string, std::string>>&);
    friend Preorder from_relation(std::vector<std::string>, const std::vector<EventSet>&);

    std::vector<std::string> events_;
    std::vector<EventSet> down_;  // down_[y] = {x : x <= y}
};

/// Reflexive-transitive closure of the generating pairs (x, y), read as x <= y.
Preorder closure(const std::vector<std::string>& events,
                 const std::vector<std::pair<std::string, std::string>>& generators);

/// Builds a preorder from per-event downsets, closing them under transitivity.
/// `events` must already be sorted and distinct.
Preorder from_relation(std::vector<std::string> events, const std::vector<EventSet>& downsets);

Preorder discrete_order(std::vector<std::string> events);
Preorder indiscrete_order(std::vector<std::string> events);
/// Total order following the given sequence of names.
Preorder chain_order(const std::vector<std::string>& sequence);

CausalRelationship classify(const Preorder& po, const std::string& x, const std::string& y);
CausalRelationship classify(const Preorder& po, EventIndex x, EventIndex y);

inline constexpr std::size_t kMaxLowersetEvents = 16;

/// All lowersets, ordered by size and then by canonical member sequence.
std::vector<EventSet> lowersets(const Preorder& po);

EventSet downset(const Preorder& po, const std::string& event);

inline constexpr std::size_t kMaxEnumerationEvents = 5;

/// All labeled preorders on the events (reflexive-transitive relations).
std::vector<Preorder> enumerate_preorders(const std::vector<std::string>& events);
/// All labeled partial orders on the events.
std::vector<Preorder> enumerate_posets(const std::vector<std::string>& events);

}  // namespace causal
