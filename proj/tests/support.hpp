#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "causal/analysis.hpp"
#include "causal/distributions.hpp"
#include "causal/models.hpp"

namespace support {

using namespace causal;

inline const std::vector<std::string> kBits{"0", "1"};

inline std::vector<std::string> event_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(std::string(1, static_cast<char>('A' + k)));
    return out;
}

inline ScenarioPtr binary(const Preorder& po) { return make_scenario(CausalScenario::uniform(po, kBits, kBits)); }

inline Preorder diamond_order() {
    return closure({"A", "B", "C", "D"}, {{"C", "A"}, {"C", "B"}, {"A", "D"}, {"B", "D"}});
}

/// Relation matrix (row-major, x <= y at x * n + y) of a library preorder.
inline std::vector<bool> relation_matrix(const Preorder& po) {
    const std::size_t n = po.size();
    std::vector<bool> m(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) m[x * n + y] = po.leq(x, y);
    }
    return m;
}

/// Every reflexive relation on n points, filtered for transitivity (and antisymmetry).
inline std::set<std::vector<bool>> brute_force_relations(std::size_t n, bool posets) {
    std::vector<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (x != y) off.emplace_back(x, y);
        }
    }
    std::set<std::vector<bool>> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << off.size()); ++bits) {
        std::vector<bool> m(n * n, false);
        for (std::size_t x = 0; x < n; ++x) m[x * n + x] = true;
        for (std::size_t k = 0; k < off.size(); ++k) {
            if ((bits >> k) & 1u) m[off[k].first * n + off[k].second] = true;
        }
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x) {
            for (std::size_t y = 0; y < n && ok; ++y) {
                for (std::size_t z = 0; z < n && ok; ++z) {
                    if (m[x * n + y] && m[y * n + z] && !m[x * n + z]) ok = false;
                }
                if (posets && x != y && m[x * n + y] && m[y * n + x]) ok = false;
            }
        }
        if (ok) out.insert(std::move(m));
    }
    return out;
}

inline NonNegRational random_weight(std::mt19937_64& rng, long max = 9) {
    return NonNegRational(std::uniform_int_distribution<long>(1, max)(rng));
}

/// A uniformly random section on u, built factor by factor.
inline CausalSection random_section(const Locale& locale, const LocaleElement& u, std::mt19937_64& rng) {
    SectionFactorization f{u, {}};
    for (EventIndex e : u.support().members()) {
        EventFactor factor{e, locale.scenario().order().downset(e), {}};
        std::uniform_int_distribution<int> out(0, static_cast<int>(locale.scenario().output_count(e)) - 1);
        factor.table.resize(factor_space(locale, u, e).size());
        for (auto& cell : factor.table) cell = static_cast<std::uint16_t>(out(rng));
        f.factors.push_back(std::move(factor));
    }
    return assemble(locale, f);
}

/// Random rational weights normalized to one.
inline std::vector<NonNegRational> random_simplex(std::size_t k, std::mt19937_64& rng, bool allow_zero = false) {
    std::vector<long> raw(k);
    long total = 0;
    std::uniform_int_distribution<long> pick(allow_zero ? 0 : 1, 7);
    while (total == 0) {
        total = 0;
        for (auto& r : raw) total += (r = pick(rng));
    }
    std::vector<NonNegRational> out;
    for (long r : raw) out.emplace_back(r, total);
    return out;
}

/// An arbitrary row-normalized table, usually not causal.
inline EmpiricalTable random_table(const ScenarioPtr& s, std::mt19937_64& rng) {
    const EventSet all = s->order().all();
    const std::size_t rows = JointSpace::inputs(*s, all).size();
    const std::size_t cols = JointSpace::outputs(*s, all).size();
    std::vector<NonNegRational> table;
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = random_simplex(cols, rng, true);
        table.insert(table.end(), row.begin(), row.end());
    }
    return EmpiricalTable(s, std::move(table));
}

/// A mixture of k random deltas: causal for the locale's order by construction.
inline EmpiricalTable random_causal_table(const Locale& locale, std::size_t k, std::mt19937_64& rng) {
    const auto weights = random_simplex(k, rng);
    std::map<CausalSection, NonNegRational> mix;
    for (std::size_t j = 0; j < k; ++j) {
        auto [it, fresh] = mix.try_emplace(random_section(locale, locale.top(), rng), weights[j]);
        if (!fresh) it->second += weights[j];
    }
    return convex_mix(locale, mix);
}

/// Result of exact elimination on A x = b.
struct LinearSolution {
    bool consistent = false;
    std::size_t rank = 0;
    std::vector<mpq_class> x;  // one solution, free variables at zero
};

/// Rational Gauss-Jordan elimination on a dense system.
inline LinearSolution solve_linear(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const mpq_class inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        b[r] *= inv;
        for (std::size_t q = 0; q < rows; ++q) {
            if (q == r || a[q][c] == 0) continue;
            const mpq_class f = a[q][c];
            for (std::size_t k = 0; k < cols; ++k) a[q][k] -= f * a[r][k];
            b[q] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    LinearSolution out;
    out.rank = r;
    out.consistent = true;
    for (std::size_t q = r; q < rows; ++q) {
        if (b[q] != 0) out.consistent = false;
    }
    out.x.assign(cols, 0);
    for (std::size_t k = 0; k < r; ++k) out.x[pivot_col[k]] = b[k];
    return out;
}

/// Locality by search over basic solutions: keep the sections whose delta
/// lies inside the support of e, then try every linearly independent subset
/// of them (smallest first) for a non-negative solution of
/// sum_f w_f delta_f = e, sum_f w_f = 1. A feasible system always has such
/// a basic solution, so the search is complete.
inline std::optional<std::map<CausalSection, NonNegRational>> brute_force_local(const Locale& L, const EmpiricalTable& e) {
    std::vector<CausalSection> cols;
    std::vector<std::vector<std::size_t>> outs;
    for (const auto& f : enumerate_sections(L, L.top())) {
        const FlatTable t = to_table(L, f);
        bool inside = true;
        for (std::size_t r = 0; r < t.outputs.size() && inside; ++r) inside = !e.at(r, t.outputs[r]).is_zero();
        if (!inside) continue;
        cols.push_back(f);
        outs.push_back(t.outputs);
    }
    const std::size_t cells = e.rows() * e.cols();
    std::vector<std::size_t> pick;
    // Subsets of size k in lexicographic order.
    for (std::size_t k = 1; k <= std::min<std::size_t>(cols.size(), cells + 1); ++k) {
        pick.assign(k, 0);
        for (std::size_t j = 0; j < k; ++j) pick[j] = j;
        while (true) {
            std::vector<std::vector<mpq_class>> a(cells + 1, std::vector<mpq_class>(k, 0));
            std::vector<mpq_class> b(cells + 1, 0);
            for (std::size_t r = 0; r < e.rows(); ++r) {
                for (std::size_t c = 0; c < e.cols(); ++c) b[r * e.cols() + c] = e.at(r, c).value();
            }
            b[cells] = 1;
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t r = 0; r < e.rows(); ++r) a[r * e.cols() + outs[pick[j]][r]][j] = 1;
                a[cells][j] = 1;
            }
            const LinearSolution sol = solve_linear(a, b);
            if (sol.consistent && sol.rank == k &&
                std::all_of(sol.x.begin(), sol.x.end(), [](const mpq_class& v) { return v >= 0; })) {
                std::map<CausalSection, NonNegRational> out;
                for (std::size_t j = 0; j < k; ++j) {
                    if (sol.x[j] != 0) out.emplace(cols[pick[j]], NonNegRational(sol.x[j]));
                }
                return out;
            }
            std::size_t pos = k;
            while (pos > 0 && pick[pos - 1] == cols.size() - k + pos - 1) --pos;
            if (pos == 0) break;
            ++pick[pos - 1];
            for (std::size_t j = pos; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace support
