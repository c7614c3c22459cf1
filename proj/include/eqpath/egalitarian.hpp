#pragma once

#include <optional>
#include <vector>

#include "eqpath/core.hpp"

namespace eqpath::egal {

/// theta is the optimal egalitarian welfare over sigma-consistent complete
/// allocations; next_value its successor in the realizable list (absent when
/// theta is maximal); unsafe_pos the leftmost sigma position that cannot be
/// raised to next_value without starving a successor.
struct ThetaCertificate {
  Value theta = 0;
  std::optional<Value> next_value;
  std::optional<int> unsafe_pos;  // 0-based position in sigma
};

enum class SearchMode { Linear, Binary };

/// Left-to-right scan assigning each agent in sigma order the minimal
/// connected bundle, starting at the frontier, worth at least its target.
/// Nullopt when some agent cannot be served within the path; a zero target
/// yields an empty bundle.
std::optional<Allocation> greedy_feasible(const Instance& inst, const Ordering& sigma,
                                          const std::vector<Value>& targets);

ThetaCertificate optimal_theta(const Instance& inst, const Ordering& sigma,
                               SearchMode mode = SearchMode::Linear);

struct UnsafeScan {
  int unsafe_pos = 0;          // 0-based position in sigma
  std::vector<Bundle> prefix;  // by agent id; bundles fixed for positions before unsafe_pos
};

UnsafeScan leftmost_unsafe(const Instance& inst, const Ordering& sigma,
                           const ThetaCertificate& cert);

/// Connected, complete, sigma-consistent, EQ1 allocation whose egalitarian
/// welfare is optimal among sigma-consistent complete allocations. Monotone
/// valuations, goods only.
Allocation eq1_complete(const Instance& inst, const Ordering& sigma,
                        SearchMode mode = SearchMode::Linear);

/// Chores variant: negates the instance, runs the goods machinery on the
/// disutilities, and reinterprets. Output is connected, complete,
/// sigma-consistent and EQ1 in the chores sense; the best-off agent's utility
/// is minimized (equivalently the least burden is maximized).
Allocation eq1_complete_chores(const Instance& inst, const Ordering& sigma);

}  // namespace eqpath::egal
