#include "causal/sections.hpp"

#include <bit>

namespace causal {

namespace {

std::size_t position_of(std::uint32_t mask, std::size_t input) {
    return static_cast<std::size_t>(std::popcount(mask & ((std::uint32_t{1} << input) - 1)));
}

std::size_t input_at(std::uint32_t mask, std::size_t position) {
    for (std::size_t k = 0; k < position; ++k) mask &= mask - 1;
    return static_cast<std::size_t>(std::countr_zero(mask));
}

// Rewrites the context digits of `a` from positions inside `from` to
// positions inside `to`. Every input must be present in `to`.
void remap_positions(const LocaleElement& from, const LocaleElement& to, EventSet context, Assignment& a) {
    for (EventIndex e : context) {
        const std::size_t input = input_at(from.subset(e), static_cast<std::size_t>(a[e]));
        a[e] = static_cast<int>(position_of(to.subset(e), input));
    }
}

// True iff every context input (positions inside `from`) lies in `box`.
bool inside_box(const LocaleElement& from, const LocaleElement& box, EventSet context, const Assignment& a) {
    for (EventIndex e : context) {
        if (!box.support().contains(e)) return false;
        const std::size_t input = input_at(from.subset(e), static_cast<std::size_t>(a[e]));
        if (((box.subset(e) >> input) & 1u) == 0) return false;
    }
    return true;
}

void check_total(const Locale& locale, const FlatTable& table) {
    locale.check(table.domain);
    const JointSpace ins = locale.input_space(table.domain);
    const JointSpace outs = JointSpace::outputs(locale.scenario(), table.domain.support());
    if (table.outputs.size() != ins.size()) throw CausalError("section table is not total on its domain");
    for (std::size_t o : table.outputs) {
        if (o >= outs.size()) throw CausalError("section table has an out-of-range output");
    }
}

// Folds a flat table into per-event factor tables; nullopt on a causality violation.
std::optional<std::vector<std::vector<std::uint16_t>>> fold(const Locale& locale, const FlatTable& table) {
    check_total(locale, table);
    const auto& s = locale.scenario();
    const LocaleElement& u = table.domain;
    const JointSpace ins = locale.input_space(u);
    const JointSpace outs = JointSpace::outputs(s, u.support());
    std::vector<std::vector<int>> seen(s.size());
    std::vector<JointSpace> spaces(s.size());
    for (EventIndex e : u.support()) {
        spaces[e] = factor_space(locale, u, e);
        seen[e].assign(spaces[e].size(), -1);
    }
    Assignment in(s.size(), -1);
    Assignment out(s.size(), -1);
    for (std::size_t row = 0; row < ins.size(); ++row) {
        ins.decode(row, in);
        outs.decode(table.outputs[row], out);
        for (EventIndex e : u.support()) {
            int& cell = seen[e][spaces[e].encode(in)];
            if (cell == -1) {
                cell = out[e];
            } else if (cell != out[e]) {
                return std::nullopt;
            }
        }
    }
    std::vector<std::vector<std::uint16_t>> tables(s.size());
    for (EventIndex e : u.support()) {
        tables[e].assign(seen[e].begin(), seen[e].end());
    }
    return tables;
}

}  // namespace

JointSpace factor_space(const Locale& locale, const LocaleElement& u, EventIndex e) {
    if (!u.support().contains(e)) throw CausalError("factor_space: event outside the support");
    const EventSet context = locale.scenario().order().downset(e);
    std::vector<std::size_t> radix(u.event_count(), 0);
    for (EventIndex c : context) radix[c] = u.subset_size(c);
    return JointSpace(context, std::move(radix));
}

std::size_t CausalSection::output_at(const Locale& locale, EventIndex e, const Assignment& inputs) const {
    const JointSpace space = factor_space(locale, domain_, e);
    Assignment pos(inputs.size(), -1);
    for (EventIndex c : space.events()) {
        const auto input = static_cast<std::size_t>(inputs.at(c));
        if (((domain_.subset(c) >> input) & 1u) == 0) throw CausalError("input outside the section's domain");
        pos[c] = static_cast<int>(position_of(domain_.subset(c), input));
    }
    return tables_[e][space.encode(pos)];
}

Assignment CausalSection::apply(const Locale& locale, const Assignment& inputs) const {
    Assignment out(domain_.event_count(), -1);
    for (EventIndex e : domain_.support()) {
        out[e] = static_cast<int>(output_at(locale, e, inputs));
    }
    return out;
}

bool is_causal(const Locale& locale, const FlatTable& table) { return fold(locale, table).has_value(); }

CausalSection from_table(const Locale& locale, const FlatTable& table) {
    auto tables = fold(locale, table);
    if (!tables) throw CausalError("table is not causal for the scenario's order");
    return CausalSection(table.domain, std::move(*tables));
}

FlatTable to_table(const Locale& locale, const CausalSection& f) {
    const auto& s = locale.scenario();
    const LocaleElement& u = f.domain();
    const JointSpace ins = locale.input_space(u);
    const JointSpace outs = JointSpace::outputs(s, u.support());
    std::vector<JointSpace> spaces(s.size());
    for (EventIndex e : u.support()) spaces[e] = factor_space(locale, u, e);
    FlatTable flat{u, std::vector<std::size_t>(ins.size())};
    Assignment in(s.size(), -1);
    Assignment out(s.size(), -1);
    for (std::size_t row = 0; row < ins.size(); ++row) {
        ins.decode(row, in);
        for (EventIndex e : u.support()) out[e] = f.table(e)[spaces[e].encode(in)];
        flat.outputs[row] = outs.encode(out);
    }
    return flat;
}

CausalSection restrict(const Locale& locale, const CausalSection& f, const LocaleElement& v) {
    const LocaleElement& u = f.domain();
    if (!locale.leq(v, u)) throw CausalError("restrict: target is not below the section's domain");
    std::vector<std::vector<std::uint16_t>> tables(u.event_count());
    Assignment a(u.event_count(), -1);
    for (EventIndex e : v.support()) {
        const JointSpace to = factor_space(locale, v, e);
        const JointSpace from = factor_space(locale, u, e);
        tables[e].resize(to.size());
        for (std::size_t k = 0; k < to.size(); ++k) {
            to.decode(k, a);
            remap_positions(v, u, to.events(), a);
            tables[e][k] = f.table(e)[from.encode(a)];
        }
    }
    return CausalSection(v, std::move(tables));
}

GlueResult glue(const Locale& locale, const CausalSection& f, const CausalSection& g) {
    const LocaleElement& u = f.domain();
    const LocaleElement& v = g.domain();
    const LocaleElement overlap = locale.meet(u, v);
    GlueResult result;
    if (restrict(locale, f, overlap) != restrict(locale, g, overlap)) return result;
    result.compatible = true;

    const LocaleElement w = locale.join(u, v);
    std::vector<std::vector<std::uint16_t>> tables(w.event_count());
    Assignment a(w.event_count(), -1);
    Assignment b(w.event_count(), -1);
    for (EventIndex e : w.support()) {
        const JointSpace space = factor_space(locale, w, e);
        tables[e].assign(space.size(), 0);
        const bool in_u = u.support().contains(e);
        const bool in_v = v.support().contains(e);
        const JointSpace space_u = in_u ? factor_space(locale, u, e) : JointSpace{};
        const JointSpace space_v = in_v ? factor_space(locale, v, e) : JointSpace{};
        for (std::size_t k = 0; k < space.size(); ++k) {
            space.decode(k, a);
            std::optional<std::uint16_t> value;
            if (in_u && inside_box(w, u, space.events(), a)) {
                b = a;
                remap_positions(w, u, space.events(), b);
                value = f.table(e)[space_u.encode(b)];
            }
            if (in_v && inside_box(w, v, space.events(), a)) {
                b = a;
                remap_positions(w, v, space.events(), b);
                const std::uint16_t other = g.table(e)[space_v.encode(b)];
                if (value && *value != other) {
                    throw CausalError("glue: compatible sections disagree on a shared cell");
                }
                value = other;
            }
            if (value) {
                tables[e][k] = *value;
            } else {
                result.free_cells.push_back({e, k});
            }
        }
    }
    result.section = CausalSection(w, std::move(tables));
    return result;
}

mpz_class count_sections(const Locale& locale, const LocaleElement& u) {
    locale.check(u);
    mpz_class total = 1;
    for (EventIndex e : u.support()) {
        const std::size_t cells = factor_space(locale, u, e).size();
        mpz_class base = static_cast<unsigned long>(locale.scenario().output_count(e));
        mpz_class power;
        mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(cells));
        total *= power;
    }
    return total;
}

SectionRange::SectionRange(const Locale& locale, LocaleElement domain) : domain_(std::move(domain)) {
    const mpz_class count = count_sections(locale, domain_);
    if (count > kMaxSectionEnumeration) {
        throw CausalError("section enumeration refused: " + count.get_str() + " sections exceed the budget of " +
                          std::to_string(kMaxSectionEnumeration));
    }
    size_ = count.get_ui();
    radix_.assign(domain_.event_count(), 0);
    events_ = domain_.support().members();
    for (EventIndex e : events_) radix_[e] = locale.scenario().output_count(e);
    std::vector<std::vector<std::uint16_t>> tables(domain_.event_count());
    for (EventIndex e : events_) tables[e].assign(factor_space(locale, domain_, e).size(), 0);
    first_ = CausalSection(domain_, std::move(tables));
}

SectionRange::iterator::iterator(const SectionRange* range, bool done) : range_(range), done_(done) {
    if (!done_) current_ = range_->first_;
}

SectionRange::iterator& SectionRange::iterator::operator++() {
    auto& tables = current_.tables_;
    const auto& events = range_->events_;
    for (auto e = events.rbegin(); e != events.rend(); ++e) {
        auto& table = tables[*e];
        const auto top = static_cast<std::uint16_t>(range_->radix_[*e] - 1);
        for (auto cell = table.rbegin(); cell != table.rend(); ++cell) {
            if (*cell < top) {
                ++*cell;
                return *this;
            }
            *cell = 0;
        }
    }
    done_ = true;
    return *this;
}

SectionRange enumerate_sections(const Locale& locale, const LocaleElement& u) { return SectionRange(locale, u); }

SectionFactorization factorize(const Locale& locale, const CausalSection& f) {
    SectionFactorization out{f.domain(), {}};
    for (EventIndex e : f.domain().support()) {
        out.factors.push_back({e, locale.scenario().order().downset(e), f.table(e)});
    }
    return out;
}

CausalSection assemble(const Locale& locale, const SectionFactorization& factors) {
    const LocaleElement& u = factors.domain;
    locale.check(u);
    const auto members = u.support().members();
    if (factors.factors.size() != members.size()) throw CausalError("assemble: one factor per supported event required");
    std::vector<std::vector<std::uint16_t>> tables(u.event_count());
    for (std::size_t k = 0; k < members.size(); ++k) {
        const EventFactor& factor = factors.factors[k];
        const EventIndex e = members[k];
        if (factor.event != e) throw CausalError("assemble: factors must follow the canonical event order");
        if (factor.context != locale.scenario().order().downset(e)) {
            throw CausalError("assemble: factor context must be the event's downset");
        }
        if (factor.table.size() != factor_space(locale, u, e).size()) {
            throw CausalError("assemble: factor table size does not match the domain");
        }
        for (std::uint16_t o : factor.table) {
            if (o >= locale.scenario().output_count(e)) throw CausalError("assemble: output out of range");
        }
        tables[e] = factor.table;
    }
    return CausalSection(u, std::move(tables));
}

}  // namespace causal
