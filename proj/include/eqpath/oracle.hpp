#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "eqpath/core.hpp"

namespace eqpath::oracle {

struct EnumerationBudget {
  long long max_states = 5'000'000;
};

enum class ExecMode { Serial, Parallel };

/// Number of complete connected allocations: C(m+n-1, n-1) for a fixed
/// ordering, times n! when the ordering is free. Saturates instead of
/// overflowing.
long long count_complete(int num_goods, int num_agents, bool sigma_free);

/// Compositions of m into n ordered non-negative parts, lexicographic.
bool next_composition(std::vector<int>& sizes);
std::vector<int> unrank_composition(long long index, int num_goods, int num_agents);

Allocation allocation_from_sizes(const Ordering& order, const std::vector<int>& sizes);

/// Streams every complete connected allocation in deterministic lexicographic
/// order (all agent orders unless sigma is given). The visitor returns false
/// to stop. Throws BudgetExceeded up front when the space exceeds the budget;
/// a truncated sweep would be worse than none.
void enumerate_complete(const Instance& inst, const std::optional<Ordering>& sigma,
                        const EnumerationBudget& budget,
                        const std::function<bool(const Allocation&)>& visit);

struct MaxEgalitarian {
  Value value;
  Allocation witness;  // first allocation in enumeration order attaining the max
};

MaxEgalitarian max_egalitarian(const Instance& inst, const Ordering& sigma,
                               const EnumerationBudget& budget = {},
                               ExecMode mode = ExecMode::Parallel);

struct PropertyQuery {
  bool eq1 = false;
  bool ef1 = false;
  bool nw = false;
  bool po = false;
  bool complete = false;  // always holds for enumerated allocations; kept for the interface
  std::optional<Value> egal_at_least;
  std::optional<Value> util_at_least;
};

std::optional<Allocation> exists_satisfying(const Instance& inst, const PropertyQuery& query,
                                            const std::optional<Ordering>& sigma,
                                            const EnumerationBudget& budget = {},
                                            ExecMode mode = ExecMode::Parallel);

enum class DominationScope {
  All,               // complete connected allocations over every agent order
  SigmaEq1Complete,  // sigma-consistent complete EQ1 allocations (sigma from alloc)
};

bool pareto_undominated(const Instance& inst, const Allocation& alloc, DominationScope scope,
                        const EnumerationBudget& budget = {}, ExecMode mode = ExecMode::Parallel);

/// A concrete allocation Pareto-dominating `alloc` within the scope, when one
/// exists.
std::optional<Allocation> find_dominating(const Instance& inst, const Allocation& alloc,
                                          DominationScope scope,
                                          const EnumerationBudget& budget = {});

/// Exact subset-DP: is there a complete connected allocation (any agent
/// order) giving every agent at least its target? Used for Pareto checks at
/// gadget scale where plain enumeration cannot fit any budget; cross-checked
/// against enumeration on small instances in the test suite.
bool exists_complete_with_targets(const Instance& inst, const std::vector<Value>& targets);

/// Approval-pruned search for a connected non-wasteful allocation.
std::optional<Allocation> find_nw_witness(const Instance& inst);

}  // namespace eqpath::oracle
