#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "causal/lp.hpp"
#include "causal/models.hpp"

namespace causal {

/// Raised when a section space exceeds the locality column budget.
class BudgetExceeded : public CausalError {
public:
    using CausalError::CausalError;
};

inline constexpr std::uint64_t kMaxLocalityColumns = 1'000'000;

/// Either a decomposition into deltas of causal sections or a non-locality verdict.
struct LocalityCertificate {
    bool local = false;
    std::map<CausalSection, NonNegRational> decomposition;
    std::uint64_t columns = 0;
};

/// Decides whether e is a mixture of deltas of causal sections for the
/// scenario's order. Refuses pre-orders, non-causal models and section
/// spaces beyond kMaxLocalityColumns. A returned decomposition has been
/// re-multiplied and compared with e cell by cell.
LocalityCertificate is_local(const EmpiricalTable& e);

/// Possibilistic locality: the supports of the consistent sections' deltas
/// must cover the support of e exactly.
struct PossibilisticCertificate {
    bool local = false;
    std::vector<CausalSection> sections;  // all sections consistent with the support
};
PossibilisticCertificate is_local(const ConditionalDistribution<Boolean>& e);

struct CausalFraction {
    NonNegRational value;
    /// The dominated table x with row sums equal to `value`.
    std::vector<NonNegRational> witness;
    /// Set when the order is not antisymmetric: the result is relative to
    /// the causality equations only.
    bool equation_only = false;
};

/// Largest lambda with lambda * e' <= e entrywise for some e' satisfying the
/// causality equations of `order`. The witness is re-verified before return.
CausalFraction causal_fraction(const EmpiricalTable& e, const Preorder& order);

struct SweepEntry {
    Preorder order;
    CausalFraction fraction;
};

/// causal_fraction against every labeled pre-order (or partial order) on the
/// model's events, ordered by relation size. At most four events.
std::vector<SweepEntry> sweep(const EmpiricalTable& e, bool posets_only = false);

}  // namespace causal
