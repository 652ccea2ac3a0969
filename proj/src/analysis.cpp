#include "causal/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <optional>
#include <thread>

namespace causal {

namespace {

void require_full_support(const CausalScenario& s, EventSet support, const char* what) {
    if (support != s.order().all()) throw CausalError(std::string(what) + ": model must cover all events");
}

Locale definite_locale(const ScenarioPtr& s) {
    if (!s->order().is_partial_order()) {
        throw CausalError("locality is undefined for pre-orders: the order is not antisymmetric");
    }
    return Locale(s);
}

SectionRange budgeted_sections(const Locale& locale) {
    const mpz_class count = count_sections(locale, locale.top());
    if (count > kMaxLocalityColumns) {
        throw BudgetExceeded("section space has " + count.get_str() + " elements, above the budget of " +
                             std::to_string(kMaxLocalityColumns) + " columns");
    }
    return enumerate_sections(locale, locale.top());
}

}  // namespace

LocalityCertificate is_local(const EmpiricalTable& e) {
    const auto& s = e.scenario();
    require_full_support(s, e.support(), "is_local");
    const Locale locale = definite_locale(e.scenario_ptr());
    if (!check_causality(e).causal()) throw CausalError("is_local: model is not causal for the order");
    const SectionRange range = budgeted_sections(locale);

    const std::size_t cols = e.cols();
    ExactLP lp;
    std::vector<LinearConstraint> cells(e.rows() * cols);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        cells[k].relation = Relation::eq;
        cells[k].rhs = e.table()[k].value();
    }
    LinearConstraint simplex;
    simplex.rhs = 1;
    std::vector<CausalSection> columns;
    columns.reserve(range.size());
    for (const CausalSection& f : range) {
        const std::size_t var = lp.add_variable();
        const FlatTable flat = to_table(locale, f);
        for (std::size_t row = 0; row < flat.outputs.size(); ++row) {
            cells[row * cols + flat.outputs[row]].terms.emplace_back(var, 1);
        }
        simplex.terms.emplace_back(var, 1);
        columns.push_back(f);
    }
    for (auto& c : cells) lp.add_constraint(std::move(c));
    lp.add_constraint(std::move(simplex));

    LocalityCertificate cert;
    cert.columns = columns.size();
    const LPResult res = lp_solve(lp);
    if (res.status != LPStatus::optimal) return cert;
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (sgn(res.x[k]) > 0) cert.decomposition.emplace(columns[k], NonNegRational(res.x[k]));
    }
    if (!(convex_mix(locale, cert.decomposition) == e)) {
        throw CausalError("internal error: locality decomposition does not reproduce the model");
    }
    cert.local = true;
    return cert;
}

PossibilisticCertificate is_local(const ConditionalDistribution<Boolean>& e) {
    const auto& s = e.scenario();
    require_full_support(s, e.support(), "is_local");
    const Locale locale = definite_locale(e.scenario_ptr());
    if (!check_causality(e).causal()) throw CausalError("is_local: model is not causal for the order");
    PossibilisticCertificate cert;
    std::vector<bool> covered(e.table().size(), false);
    for (const CausalSection& f : budgeted_sections(locale)) {
        const FlatTable flat = to_table(locale, f);
        bool consistent = true;
        for (std::size_t row = 0; row < flat.outputs.size() && consistent; ++row) {
            consistent = e.at(row, flat.outputs[row]).value();
        }
        if (!consistent) continue;
        for (std::size_t row = 0; row < flat.outputs.size(); ++row) covered[row * e.cols() + flat.outputs[row]] = true;
        cert.sections.push_back(f);
    }
    cert.local = true;
    for (std::size_t k = 0; k < covered.size(); ++k) {
        if (covered[k] != e.table()[k].value()) cert.local = false;
    }
    return cert;
}

CausalFraction causal_fraction(const EmpiricalTable& e, const Preorder& order) {
    const auto& s = e.scenario();
    detail::check_same_events(s, order);
    require_full_support(s, e.support(), "causal_fraction");
    const std::size_t rows = e.rows(), cols = e.cols(), n = s.size();

    // Variable 0 is lambda; cells with e = 0 are pinned to zero and get no variable.
    ExactLP lp;
    const std::size_t lambda = lp.add_variable(1);
    constexpr std::size_t kPinned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> var(rows * cols, kPinned);
    for (std::size_t k = 0; k < var.size(); ++k) {
        if (e.table()[k].is_zero()) continue;
        var[k] = lp.add_variable();
        lp.add_constraint({{var[k], 1}}, Relation::le, e.table()[k].value());
    }
    for (std::size_t row = 0; row < rows; ++row) {
        LinearConstraint c;
        c.relation = Relation::eq;
        c.rhs = 0;
        for (std::size_t col = 0; col < cols; ++col) {
            if (var[row * cols + col] != kPinned) c.terms.emplace_back(var[row * cols + col], 1);
        }
        c.terms.emplace_back(lambda, -1);
        lp.add_constraint(std::move(c));
    }
    std::map<std::uint32_t, std::vector<std::size_t>> projections;
    for (const auto& block : reduced_equation_blocks(s, order, e.support())) {
        auto it = projections.find(block.lowerset.bits());
        if (it == projections.end()) {
            it = projections
                     .emplace(block.lowerset.bits(),
                              project_indices(e.output_space(), JointSpace::outputs(s, block.lowerset), n))
                     .first;
        }
        const auto& proj = it->second;
        const std::size_t targets = JointSpace::outputs(s, block.lowerset).size();
        std::vector<LinearConstraint> eqs(targets);
        for (std::size_t col = 0; col < cols; ++col) {
            if (std::size_t v = var[block.row_i * cols + col]; v != kPinned) eqs[proj[col]].terms.emplace_back(v, 1);
            if (std::size_t v = var[block.row_j * cols + col]; v != kPinned) eqs[proj[col]].terms.emplace_back(v, -1);
        }
        for (auto& c : eqs) {
            if (c.terms.empty()) continue;
            c.relation = Relation::eq;
            c.rhs = 0;
            lp.add_constraint(std::move(c));
        }
    }

    const LPResult res = lp_solve(lp);
    if (res.status != LPStatus::optimal) {
        throw CausalError("internal error: causal fraction program reported " + to_string(res.status));
    }
    CausalFraction out;
    out.equation_only = !order.is_partial_order();
    out.value = NonNegRational(res.x[lambda]);
    out.witness.assign(rows * cols, NonNegRational::zero());
    for (std::size_t k = 0; k < var.size(); ++k) {
        if (var[k] != kPinned) out.witness[k] = NonNegRational(res.x[var[k]]);
    }

    // Independent re-check against the unreduced equations.
    for (std::size_t row = 0; row < rows; ++row) {
        NonNegRational sum;
        for (std::size_t col = 0; col < cols; ++col) {
            const auto& x = out.witness[row * cols + col];
            if (x > e.at(row, col)) throw CausalError("internal error: fraction witness exceeds the model");
            sum += x;
        }
        if (!(sum == out.value)) throw CausalError("internal error: fraction witness row sum differs from lambda");
    }
    if (!out.value.is_zero()) {
        const NonNegRational scale(mpq_class(1 / out.value.value()));
        std::vector<NonNegRational> normalized;
        normalized.reserve(out.witness.size());
        for (const auto& x : out.witness) normalized.push_back(x * scale);
        const EmpiricalTable scaled(e.scenario_ptr(), std::move(normalized));
        if (!check_causality_full(scaled, order).causal()) {
            throw CausalError("internal error: fraction witness violates the causality equations");
        }
    }
    return out;
}

std::vector<SweepEntry> sweep(const EmpiricalTable& e, bool posets_only) {
    const auto& events = e.scenario().events();
    if (events.size() > 4) throw CausalError("sweep: at most 4 events are supported");
    const std::vector<Preorder> orders = posets_only ? enumerate_posets(events) : enumerate_preorders(events);
    std::vector<std::optional<CausalFraction>> results(orders.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < orders.size();) results[k] = causal_fraction(e, orders[k]);
    };
    const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, orders.size());
    std::vector<std::future<void>> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
    for (auto& job : pool) job.get();
    std::vector<SweepEntry> out;
    out.reserve(orders.size());
    for (std::size_t k = 0; k < orders.size(); ++k) out.push_back({orders[k], std::move(*results[k])});
    return out;
}

}  // namespace causal
