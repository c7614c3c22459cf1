#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eqpath/core.hpp"

namespace eqpath::metrics {

/// alpha = num/den with 0 <= num <= den; comparisons stay in integers.
struct Rational {
  long long num = 1;
  long long den = 1;
};

Rational parse_ratio(const std::string& text);  // "P/Q" or "P"

std::vector<Value> utility_profile(const Instance& inst, const Allocation& alloc);
Value utilitarian_welfare(const Instance& inst, const Allocation& alloc);
Value egalitarian_welfare(const Instance& inst, const Allocation& alloc);

// Value of `holder_bundle` as seen by `valuation` after the best single-good
// removal. For additive valuations any good may be removed; interval tables
// only admit the two boundary removals.
Value min_one_removed(const Valuation& valuation, const Interval& iv);
Value max_one_removed(const Valuation& valuation, const Interval& iv);

bool is_eq(const Instance& inst, const Allocation& alloc);
bool is_eq1(const Instance& inst, const Allocation& alloc);
bool is_ef(const Instance& inst, const Allocation& alloc);
bool is_ef1(const Instance& inst, const Allocation& alloc);
bool is_alpha_eq1(const Instance& inst, const Allocation& alloc, const Rational& alpha);
bool is_alpha_ef1(const Instance& inst, const Allocation& alloc, const Rational& alpha);
bool is_umax_eq(const Instance& inst, const Allocation& alloc);
bool is_nw(const Instance& inst, const Allocation& alloc);
bool is_eq1_chores(const Instance& inst, const Allocation& alloc);

/// Minimal (a, b) such that the binary instance is (a, b)-sparse: each agent
/// approves at most a goods, each good is approved by at most b agents.
std::pair<int, int> sparsity(const Instance& inst);

/// Pareto optimality among complete connected allocations over all agent
/// orders. Delegates the domination search to the oracle (defined there).
bool is_po(const Instance& inst, const Allocation& alloc);

struct CheckReport {
  std::vector<std::pair<std::string, bool>> predicates;
  std::vector<Value> utilities;
  Value utilitarian = 0;
  Value egalitarian = 0;
};

/// Structural flags plus welfare figures; solver outputs print this.
CheckReport basic_report(const Instance& inst, const Allocation& alloc);

}  // namespace eqpath::metrics
