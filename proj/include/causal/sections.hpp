#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

#include "causal/locale.hpp"

namespace causal {

/// The table of a single event's output as a function of the inputs in its
/// downset. Entries are indexed by a JointSpace over `context` whose digits
/// are positions inside the domain's input subsets.
struct EventFactor {
    EventIndex event = 0;
    EventSet context;
    std::vector<std::uint16_t> table;

    bool operator==(const EventFactor&) const = default;
};

/// Explicit per-event form of a causal section, one factor per supported event.
struct SectionFactorization {
    LocaleElement domain;
    std::vector<EventFactor> factors;
};

/// A section flattened to a function from joint inputs to joint outputs.
/// Row k is the joint input with index k in `Locale::input_space(domain)`;
/// the value is a joint output index over the domain's support.
struct FlatTable {
    LocaleElement domain;
    std::vector<std::size_t> outputs;
};

/// A causal function on a locale element, stored factorized.
class CausalSection {
public:
    CausalSection() = default;

    const LocaleElement& domain() const { return domain_; }
    /// Factor table of event e (empty when e is outside the support).
    const std::vector<std::uint16_t>& table(EventIndex e) const { return tables_.at(e); }

    /// Output index at event e for a full joint input (actual input indices).
    std::size_t output_at(const Locale& locale, EventIndex e, const Assignment& inputs) const;
    /// Joint output (-1 outside the support) for a joint input on the support.
    Assignment apply(const Locale& locale, const Assignment& inputs) const;

    bool operator==(const CausalSection&) const = default;
    auto operator<=>(const CausalSection&) const = default;

private:
    friend CausalSection assemble(const Locale&, const SectionFactorization&);
    friend CausalSection from_table(const Locale&, const FlatTable&);
    friend CausalSection restrict(const Locale&, const CausalSection&, const LocaleElement&);
    friend struct GlueResult glue(const Locale&, const CausalSection&, const CausalSection&);
    friend class SectionRange;

    CausalSection(LocaleElement domain, std::vector<std::vector<std::uint16_t>> tables)
        : domain_(std::move(domain)), tables_(std::move(tables)) {}

    LocaleElement domain_;
    std::vector<std::vector<std::uint16_t>> tables_;  // indexed by event
};

/// Index space of event e's factor on domain u.
JointSpace factor_space(const Locale& locale, const LocaleElement& u, EventIndex e);

/// True iff every event's output depends only on the inputs in its downset.
/// Throws if the table is not total on the domain.
bool is_causal(const Locale& locale, const FlatTable& table);

/// Builds a section from a flat table, throwing if it is not causal.
CausalSection from_table(const Locale& locale, const FlatTable& table);
FlatTable to_table(const Locale& locale, const CausalSection& f);

/// Restriction along v <= domain(f).
CausalSection restrict(const Locale& locale, const CausalSection& f, const LocaleElement& v);

/// A joint-input cell of a gluing fixed by neither section.
struct FreeCell {
    EventIndex event;
    std::size_t factor_index;
    bool operator==(const FreeCell&) const = default;
};

struct GlueResult {
    bool compatible = false;
    /// Present iff compatible. Free cells are filled with the first output.
    std::optional<CausalSection> section;
    /// Cells of the join lying outside both domains' input boxes. Each one
    /// can take any output, so the gluing is unique iff this is empty.
    std::vector<FreeCell> free_cells;

    bool unique() const { return compatible && free_cells.empty(); }
};

/// Glues two sections agreeing on the meet of their domains.
GlueResult glue(const Locale& locale, const CausalSection& f, const CausalSection& g);

inline constexpr std::uint64_t kMaxSectionEnumeration = 10'000'000;

/// |E(u)| = prod_w |O_w| ^ (prod_{w' <= w} |u_w'|).
mpz_class count_sections(const Locale& locale, const LocaleElement& u);

/// Deterministic enumeration of E(u): lexicographic over the factor tables,
/// events in canonical order, last entry varying fastest.
class SectionRange {
public:
    SectionRange(const Locale& locale, LocaleElement domain);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = CausalSection;
        using difference_type = std::ptrdiff_t;
        using pointer = const CausalSection*;
        using reference = const CausalSection&;

        iterator() = default;
        const CausalSection& operator*() const { return current_; }
        const CausalSection* operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator& o) const { return done_ == o.done_; }

    private:
        friend class SectionRange;
        iterator(const SectionRange* range, bool done);

        const SectionRange* range_ = nullptr;
        CausalSection current_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(this, false); }
    iterator end() const { return iterator(this, true); }

    std::uint64_t size() const { return size_; }

private:
    LocaleElement domain_;
    std::vector<std::size_t> radix_;  // output count per event
    std::vector<EventIndex> events_;  // supported events, canonical order
    std::uint64_t size_ = 1;
    CausalSection first_;
};

/// Throws when the section count exceeds kMaxSectionEnumeration.
SectionRange enumerate_sections(const Locale& locale, const LocaleElement& u);

SectionFactorization factorize(const Locale& locale, const CausalSection& f);
/// Inverse of factorize; throws if factor domains are inconsistent.
CausalSection assemble(const Locale& locale, const SectionFactorization& factors);

}  // namespace causal
