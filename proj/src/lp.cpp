#include "causal/lp.hpp"

#include <limits>

#include "causal/order.hpp"

namespace causal {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Tableau rows hold B^-1 A | B^-1 b; `profit` holds reduced profits c_j - c_B B^-1 A_j.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : a_(rows, std::vector<mpq_class>(cols + 1)), basis_(rows, kNone), profit_(cols + 1), cols_(cols) {}

    mpq_class& at(std::size_t r, std::size_t c) { return a_[r][c]; }
    mpq_class& rhs(std::size_t r) { return a_[r][cols_]; }
    std::size_t rows() const { return a_.size(); }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void set_profit(const std::vector<mpq_class>& c) {
        for (std::size_t j = 0; j < cols_; ++j) profit_[j] = c[j];
        profit_[cols_] = 0;
        for (std::size_t r = 0; r < rows(); ++r) {
            const mpq_class& cb = c[basis_[r]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (sgn(a_[r][j]) != 0) profit_[j] -= cb * a_[r][j];
            }
        }
    }

    // Objective value c_B B^-1 b.
    mpq_class value() const { return -profit_[cols_]; }

    void pivot(std::size_t pr, std::size_t pc) {
        auto& row = a_[pr];
        const mpq_class inv = 1 / row[pc];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= cols_; ++j) {
            if (sgn(row[j]) == 0) continue;
            row[j] *= inv;
            nz.push_back(j);
        }
        auto eliminate = [&](std::vector<mpq_class>& target) {
            if (sgn(target[pc]) == 0) return;
            const mpq_class f = target[pc];
            for (std::size_t j : nz) target[j] -= f * row[j];
        };
        for (std::size_t r = 0; r < rows(); ++r) {
            if (r != pr) eliminate(a_[r]);
        }
        eliminate(profit_);
        basis_[pr] = pc;
        ++pivots_;
    }

    // Runs Bland's rule on columns with allowed[j]. Returns false if unbounded.
    bool optimize(const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t pc = kNone;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (allowed[j] && sgn(profit_[j]) > 0) {
                    pc = j;
                    break;
                }
            }
            if (pc == kNone) return true;
            std::size_t pr = kNone;
            mpq_class best;
            for (std::size_t r = 0; r < rows(); ++r) {
                if (sgn(a_[r][pc]) <= 0) continue;
                mpq_class ratio = a_[r][cols_] / a_[r][pc];
                if (pr == kNone || ratio < best || (ratio == best && basis_[r] < basis_[pr])) {
                    pr = r;
                    best = std::move(ratio);
                }
            }
            if (pr == kNone) return false;
            pivot(pr, pc);
        }
    }

    void drop_row(std::size_t r) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

    std::size_t pivots() const { return pivots_; }

private:
    std::vector<std::vector<mpq_class>> a_;
    std::vector<std::size_t> basis_;
    std::vector<mpq_class> profit_;
    std::size_t cols_;
    std::size_t pivots_ = 0;
};

}  // namespace

std::string to_string(LPStatus s) {
    switch (s) {
        case LPStatus::optimal: return "optimal";
        case LPStatus::infeasible: return "infeasible";
        case LPStatus::unbounded: return "unbounded";
    }
    return "?";
}

LPResult lp_solve(const ExactLP& lp) {
    const std::size_t n = lp.variables();
    const auto& cons = lp.constraints();
    const std::size_t m = cons.size();

    // Column layout: structural | slack or surplus per inequality | artificial per ge/eq row.
    std::vector<Relation> rel(m);
    std::vector<int> sign(m, 1);
    std::size_t slacks = 0, artificials = 0;
    for (std::size_t r = 0; r < m; ++r) {
        for (const auto& [var, coef] : cons[r].terms) {
            if (var >= n) throw CausalError("lp_solve: constraint names variable " + std::to_string(var) + " of " + std::to_string(n));
        }
        rel[r] = cons[r].relation;
        if (sgn(cons[r].rhs) < 0) {
            sign[r] = -1;
            if (rel[r] == Relation::le) rel[r] = Relation::ge;
            else if (rel[r] == Relation::ge) rel[r] = Relation::le;
        }
        if (rel[r] != Relation::eq) ++slacks;
        if (rel[r] != Relation::le) ++artificials;
    }
    const std::size_t first_art = n + slacks;
    const std::size_t cols = first_art + artificials;
    Tableau t(m, cols);
    std::size_t next_slack = n, next_art = first_art;
    for (std::size_t r = 0; r < m; ++r) {
        for (const auto& [var, coef] : cons[r].terms) t.at(r, var) += sign[r] * coef;
        t.rhs(r) = sign[r] * cons[r].rhs;
        if (rel[r] == Relation::le) {
            t.at(r, next_slack) = 1;
            t.basis()[r] = next_slack++;
        } else {
            if (rel[r] == Relation::ge) t.at(r, next_slack++) = -1;
            t.at(r, next_art) = 1;
            t.basis()[r] = next_art++;
        }
    }

    LPResult result;
    std::vector<bool> allowed(cols, true);
    if (artificials > 0) {
        std::vector<mpq_class> phase1(cols);
        for (std::size_t j = first_art; j < cols; ++j) phase1[j] = -1;
        t.set_profit(phase1);
        t.optimize(allowed);
        if (sgn(t.value()) < 0) {
            result.status = LPStatus::infeasible;
            result.pivots = t.pivots();
            return result;
        }
        // Drive zero-level artificials out of the basis; rows with no other support are redundant.
        for (std::size_t r = 0; r < t.rows();) {
            if (t.basis()[r] < first_art) {
                ++r;
                continue;
            }
            std::size_t pc = kNone;
            for (std::size_t j = 0; j < first_art; ++j) {
                if (sgn(t.at(r, j)) != 0) {
                    pc = j;
                    break;
                }
            }
            if (pc == kNone) {
                t.drop_row(r);
            } else {
                t.pivot(r, pc);
                ++r;
            }
        }
        for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
    }

    std::vector<mpq_class> phase2(cols);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective()[j];
    t.set_profit(phase2);
    const bool bounded = t.optimize(allowed);
    result.pivots = t.pivots();
    if (!bounded) {
        result.status = LPStatus::unbounded;
        return result;
    }
    result.status = LPStatus::optimal;
    result.x.assign(n, 0);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (t.basis()[r] < n) result.x[t.basis()[r]] = t.rhs(r);
    }
    result.value = 0;
    for (std::size_t j = 0; j < n; ++j) result.value += lp.objective()[j] * result.x[j];
    return result;
}

bool lp_feasible_point(const ExactLP& lp, const std::vector<mpq_class>& x) {
    if (x.size() != lp.variables()) return false;
    for (const auto& v : x) {
        if (sgn(v) < 0) return false;
    }
    for (const auto& c : lp.constraints()) {
        mpq_class lhs = 0;
        for (const auto& [var, coef] : c.terms) lhs += coef * x[var];
        const int d = cmp(lhs, c.rhs);
        if ((c.relation == Relation::eq && d != 0) || (c.relation == Relation::le && d > 0) ||
            (c.relation == Relation::ge && d < 0)) {
            return false;
        }
    }
    return true;
}

}  // namespace causal
