#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "eqpath/core.hpp"
#include "eqpath/gen.hpp"

namespace eqpath::testing {

inline Instance additive_instance(ItemKind kind, std::vector<std::vector<Value>> rows) {
  std::vector<Agent> agents;
  for (std::size_t i = 0; i < rows.size(); ++i)
    agents.push_back({"a" + std::to_string(i + 1), Valuation::additive(rows[i])});
  return Instance(kind, static_cast<int>(rows[0].size()), std::move(agents));
}

inline Instance goods(std::vector<std::vector<Value>> rows) {
  return additive_instance(ItemKind::Goods, std::move(rows));
}

inline Instance chores(std::vector<std::vector<Value>> rows) {
  return additive_instance(ItemKind::Chores, std::move(rows));
}

// Three identical agents, six unit goods and one spike at the end.
inline Instance identical_spike() {
  return goods({{1, 1, 1, 1, 1, 1, 12}, {1, 1, 1, 1, 1, 1, 12}, {1, 1, 1, 1, 1, 1, 12}});
}

// Binary 3x8 instance where the second agent cannot be raised past the optimum.
inline Instance binary_scan8() {
  return goods({{1, 1, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 1, 1, 1, 0}, {0, 0, 0, 1, 0, 1, 0, 1}});
}

// The one-good-each instance whose unique sigma-consistent Pareto optimum is inequitable.
inline Instance po_unique_conflict() {
  return goods({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 1, 1}});
}

// Binary instance where the plain egalitarian scan output is Pareto dominated
// inside the sigma-consistent EQ1 class.
inline Instance po_star_gap() {
  return goods({{1, 0, 0, 1, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 1, 1}});
}

// Non-wasteful yet Pareto dominated split exists here.
inline Instance wasteful_dominates() {
  return goods({{1, 10, 0}, {10, 1, 1}});
}

// Valuations just beyond binary where the grouping construction breaks down.
inline Instance nonbinary_pair() {
  return goods({{1, 3, 1, 0}, {0, 0, 0, 2}});
}

inline Allocation make_alloc(const Instance& inst, std::vector<Bundle> bundles,
                             std::vector<int> order = {}) {
  Allocation a;
  a.bundles = std::move(bundles);
  if (order.empty())
    a.order = Ordering::identity(inst.num_agents());
  else
    a.order.agents = std::move(order);
  return a;
}

inline std::vector<Ordering> all_orderings(int n) {
  std::vector<Ordering> out;
  Ordering o = Ordering::identity(n);
  do {
    out.push_back(o);
  } while (std::next_permutation(o.agents.begin(), o.agents.end()));
  return out;
}

inline Instance random_goods(int m, int n, Value max_value, std::uint64_t seed) {
  gen::GenSpec spec;
  spec.m = m;
  spec.n = n;
  spec.max_value = max_value;
  spec.seed = seed;
  return gen::generate(spec);
}

inline Instance random_binary(int m, int n, std::uint64_t seed, double density = 0.5) {
  gen::GenSpec spec;
  spec.m = m;
  spec.n = n;
  spec.profile = gen::Profile::Binary;
  spec.density = density;
  spec.seed = seed;
  return gen::generate(spec);
}

}  // namespace eqpath::testing
