#pragma once

#include <vector>

#include "eqpath/core.hpp"

namespace eqpath::postar {

enum class Group { One, Two };  // target theta+1 vs theta

/// Labels and tentative bundles from the left-to-right grouping pass. Labels
/// are indexed by sigma position; positions before the unsafe agent keep
/// Group::One (they already hold bundles worth theta+1). The unsafe agent is
/// always Group::Two.
struct GroupLabeling {
  int unsafe_pos = 0;
  std::vector<Group> labels;     // size n, by sigma position
  std::vector<Bundle> tentative;  // by agent id, prefix bundles included
};

GroupLabeling classify_groups(const Instance& inst, const Ordering& sigma, Value theta,
                              int unsafe_pos, const std::vector<Bundle>& prefix);

/// Connected, sigma-consistent, complete, EQ1 allocation for binary additive
/// goods that no other allocation in that class Pareto dominates. Utilities
/// land in {theta, theta+1}.
Allocation po_star(const Instance& inst, const Ordering& sigma);

}  // namespace eqpath::postar
