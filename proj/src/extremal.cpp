#include "eqpath/extremal.hpp"

#include <algorithm>

#include "eqpath/metrics.hpp"

namespace eqpath::extremal {

ExtremalProfile classify_extremal(const Instance& inst, Side full_path_default) {
  if (inst.kind() != ItemKind::Goods || !inst.is_binary())
    fail(Error::Code::NotBinary, "extremal classification expects binary additive goods");
  const int m = inst.num_goods();

  ExtremalProfile profile;
  for (int i = 0; i < inst.num_agents(); ++i) {
    int first = 0, last = 0, count = 0;
    for (int j = 1; j <= m; ++j) {
      if (inst.single(i, j) == 1) {
        if (first == 0) first = j;
        last = j;
        ++count;
      }
    }
    if (count == 0)
      fail(Error::Code::NotExtremal, "agent " + inst.agent(i).name + " approves no good");
    if (count != last - first + 1)
      fail(Error::Code::NotExtremal,
           "agent " + inst.agent(i).name + " approves a set that is neither a prefix nor a suffix");
    const bool is_prefix = first == 1;
    const bool is_suffix = last == m;
    if (is_prefix && is_suffix) {
      if (full_path_default == Side::Left)
        profile.left.push_back({i, m});
      else
        profile.right.push_back({i, 1});
    } else if (is_prefix) {
      profile.left.push_back({i, last});
    } else if (is_suffix) {
      profile.right.push_back({i, first});
    } else {
      fail(Error::Code::NotExtremal,
           "agent " + inst.agent(i).name + " approves a set that is neither a prefix nor a suffix");
    }
  }
  auto by_endpoint = [](const ExtremalProfile::Entry& a, const ExtremalProfile::Entry& b) {
    return a.endpoint != b.endpoint ? a.endpoint < b.endpoint : a.agent < b.agent;
  };
  std::sort(profile.left.begin(), profile.left.end(), by_endpoint);
  std::sort(profile.right.begin(), profile.right.end(), by_endpoint);
  return profile;
}

namespace {

// Blocks in mirrored coordinates (goods numbered from the split outwards):
// first n_f agents take floor-sized blocks, the rest ceiling-sized.
std::vector<int> floor_ceiling_sizes(int goods, int agents) {
  const int floor_size = goods / agents;
  const int ceil_count = goods % agents;
  std::vector<int> sizes(agents, floor_size);
  for (int k = agents - ceil_count; k < agents; ++k) sizes[k] += 1;
  return sizes;
}

}  // namespace

std::optional<std::vector<std::pair<int, Bundle>>> solve_one_sided(
    const Instance& inst, const std::vector<ExtremalProfile::Entry>& side_agents, Side side,
    int range_lo, int range_hi) {
  const int goods = range_hi - range_lo + 1;
  const int agents = static_cast<int>(side_agents.size());
  if (agents == 0) {
    if (goods > 0) return std::nullopt;  // nobody can take these goods wastelessly
    return std::vector<std::pair<int, Bundle>>{};
  }

  std::vector<std::pair<int, Bundle>> out;
  out.reserve(agents);
  if (goods <= 0) {
    for (const auto& e : side_agents) out.push_back({e.agent, std::nullopt});
    return out;
  }

  // Left side: agents in l ascending order get blocks left to right.
  // Right side: agents in r descending order get blocks right to left, the
  // mirror image of the left construction.
  std::vector<int> sizes = floor_ceiling_sizes(goods, agents);
  if (side == Side::Left) {
    int pos = range_lo;
    for (int k = 0; k < agents; ++k) {
      const int agent = side_agents[k].agent;
      if (sizes[k] == 0) {
        out.push_back({agent, std::nullopt});
      } else {
        out.push_back({agent, Interval{pos, pos + sizes[k] - 1}});
        pos += sizes[k];
      }
    }
  } else {
    int pos = range_hi;
    std::vector<std::pair<int, Bundle>> reversed;
    for (int k = 0; k < agents; ++k) {
      const int agent = side_agents[agents - 1 - k].agent;  // r descending
      if (sizes[k] == 0) {
        reversed.push_back({agent, std::nullopt});
      } else {
        reversed.push_back({agent, Interval{pos - sizes[k] + 1, pos}});
        pos -= sizes[k];
      }
    }
    out.assign(reversed.rbegin(), reversed.rend());
  }

  // Non-wasteful within the side: every assigned good is approved by its
  // holder. Utilities then equal block sizes, and EQ1 within the side holds
  // whenever the pairwise gap check passes.
  std::vector<Value> utilities;
  for (const auto& [agent, bundle] : out) {
    if (!bundle) {
      utilities.push_back(0);
      continue;
    }
    for (int j = bundle->lo; j <= bundle->hi; ++j)
      if (inst.single(agent, j) != 1) return std::nullopt;
    utilities.push_back(inst.value(agent, bundle));
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!out[k].second) continue;
    Value reduced = utilities[k] - 1;
    for (Value other : utilities)
      if (other < reduced) return std::nullopt;
  }
  return out;
}

std::optional<Allocation> solve_extremal(const Instance& inst, Side full_path_default) {
  ExtremalProfile profile = classify_extremal(inst, full_path_default);
  const int m = inst.num_goods();
  const int n = inst.num_agents();

  for (int split = 0; split <= m; ++split) {
    auto left = solve_one_sided(inst, profile.left, Side::Left, 1, split);
    if (!left) continue;
    auto right = solve_one_sided(inst, profile.right, Side::Right, split + 1, m);
    if (!right) continue;

    Allocation alloc;
    alloc.bundles.assign(n, std::nullopt);
    for (const auto& [agent, bundle] : *left) {
      alloc.order.agents.push_back(agent);
      alloc.bundles[agent] = bundle;
    }
    for (const auto& [agent, bundle] : *right) {
      alloc.order.agents.push_back(agent);
      alloc.bundles[agent] = bundle;
    }
    if (!metrics::is_nw(inst, alloc) || !metrics::is_eq1(inst, alloc)) continue;
    if (!validate_allocation(inst, alloc).all())
      throw std::logic_error("extremal solution must be a valid complete allocation");
    return alloc;
  }
  return std::nullopt;
}

}  // namespace eqpath::extremal
