#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eqpath/core.hpp"

namespace eqpath::extremal {

enum class Side { Left, Right };

/// Classification of a binary instance where every agent approves a prefix
/// (left-extremal, endpoint l_i) or a suffix (right-extremal, endpoint r_i).
struct ExtremalProfile {
  struct Entry {
    int agent = 0;
    int endpoint = 0;  // l_i for left agents, r_i for right agents
  };
  std::vector<Entry> left;   // sorted by endpoint ascending, ties by agent id
  std::vector<Entry> right;  // sorted by endpoint ascending, ties by agent id
};

/// Throws NotExtremal (naming the agent) when some approved set is neither a
/// prefix nor a suffix; agents approving every good take the given default.
ExtremalProfile classify_extremal(const Instance& inst, Side full_path_default = Side::Left);

/// Canonical floor/ceiling block assignment on one side of a split. Goods
/// range is [range_lo, range_hi] in original coordinates (empty when
/// range_lo > range_hi). Returns the side's bundles when they are
/// non-wasteful and EQ1 within the side, nullopt otherwise.
std::optional<std::vector<std::pair<int, Bundle>>> solve_one_sided(
    const Instance& inst, const std::vector<ExtremalProfile::Entry>& side_agents, Side side,
    int range_lo, int range_hi);

/// Decision procedure: a connected, non-wasteful, EQ1 allocation when one
/// exists (smallest feasible split point), nullopt otherwise.
std::optional<Allocation> solve_extremal(const Instance& inst,
                                         Side full_path_default = Side::Left);

}  // namespace eqpath::extremal
