#include "eqpath/egalitarian.hpp"

#include <algorithm>

#include "eqpath/metrics.hpp"

namespace eqpath::egal {

namespace {

// Minimal r such that [frontier, r] is worth at least target, or 0 when the
// path runs out first. Monotone valuations make the first hit minimal.
int minimal_end(const Instance& inst, int agent, int frontier, Value target) {
  for (int r = frontier; r <= inst.num_goods(); ++r)
    if (inst.value(agent, Interval{frontier, r}) >= target) return r;
  return 0;
}

// Mirror of minimal_end for the right-to-left scan.
int minimal_start(const Instance& inst, int agent, int frontier, Value target) {
  for (int l = frontier; l >= 1; --l)
    if (inst.value(agent, Interval{l, frontier}) >= target) return l;
  return 0;
}

void require_goods(const Instance& inst) {
  if (inst.kind() != ItemKind::Goods)
    fail(Error::Code::KindMismatch, "this solver expects a goods instance");
}

}  // namespace

std::optional<Allocation> greedy_feasible(const Instance& inst, const Ordering& sigma,
                                          const std::vector<Value>& targets) {
  sigma.validate(inst.num_agents());
  if (targets.size() != sigma.agents.size())
    fail(Error::Code::InvalidInstance, "one target per agent required");

  Allocation out;
  out.order = sigma;
  out.bundles.assign(inst.num_agents(), std::nullopt);
  int frontier = 1;
  for (int pos = 0; pos < sigma.size(); ++pos) {
    const int agent = sigma.at(pos);
    const Value target = targets[pos];
    if (target <= 0) continue;  // minimal bundle worth >= 0 is empty
    if (frontier > inst.num_goods()) return std::nullopt;
    int end = minimal_end(inst, agent, frontier, target);
    if (end == 0) return std::nullopt;
    out.bundles[agent] = Interval{frontier, end};
    frontier = end + 1;
  }
  return out;
}

namespace {

bool feasible_uniform(const Instance& inst, const Ordering& sigma, Value target) {
  std::vector<Value> targets(sigma.agents.size(), target);
  return greedy_feasible(inst, sigma, targets).has_value();
}

// Smallest sigma position i (0-based) such that no sigma-consistent partial
// allocation gives positions 0..i at least `next` and the rest at least
// `theta`. Guaranteed to exist because `next` is uniformly infeasible.
int unsafe_scan(const Instance& inst, const Ordering& sigma, Value theta, Value next) {
  const int n = sigma.size();
  for (int i = 0; i < n; ++i) {
    std::vector<Value> targets(n, theta);
    for (int k = 0; k <= i; ++k) targets[k] = next;
    if (!greedy_feasible(inst, sigma, targets)) return i;
  }
  throw std::logic_error("a theta-unsafe agent must exist when theta+ is infeasible");
}

}  // namespace

ThetaCertificate optimal_theta(const Instance& inst, const Ordering& sigma, SearchMode mode) {
  require_goods(inst);
  sigma.validate(inst.num_agents());
  const RealizableUtilityList list = realizable_utilities(inst);
  const auto& values = list.values;

  // Feasibility of the uniform target is monotone along the list, so a
  // linear climb and a binary search must land on the same index.
  std::size_t best = 0;  // values[0] == 0 is always feasible
  if (mode == SearchMode::Linear) {
    while (best + 1 < values.size() && feasible_uniform(inst, sigma, values[best + 1])) ++best;
  } else {
    std::size_t lo = 0, hi = values.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi + 1) / 2;
      if (feasible_uniform(inst, sigma, values[mid]))
        lo = mid;
      else
        hi = mid - 1;
    }
    best = lo;
  }

  ThetaCertificate cert;
  cert.theta = values[best];
  if (best + 1 < values.size()) {
    cert.next_value = values[best + 1];
    cert.unsafe_pos = unsafe_scan(inst, sigma, cert.theta, *cert.next_value);
  }
  return cert;
}

UnsafeScan leftmost_unsafe(const Instance& inst, const Ordering& sigma,
                           const ThetaCertificate& cert) {
  if (!cert.next_value)
    fail(Error::Code::InvalidInstance, "no unsafe agent exists when theta is maximal");
  UnsafeScan scan;
  scan.unsafe_pos = unsafe_scan(inst, sigma, cert.theta, *cert.next_value);
  scan.prefix.assign(inst.num_agents(), std::nullopt);
  if (scan.unsafe_pos > 0) {
    std::vector<Value> targets(sigma.agents.size(), 0);
    for (int k = 0; k < scan.unsafe_pos; ++k) targets[k] = *cert.next_value;
    auto partial = greedy_feasible(inst, sigma, targets);
    if (!partial) throw std::logic_error("prefix assignment must be feasible before the unsafe agent");
    for (int k = 0; k < scan.unsafe_pos; ++k)
      scan.prefix[sigma.at(k)] = partial->bundles[sigma.at(k)];
  }
  return scan;
}

namespace {

// Completion used when theta is the largest realizable value: the greedy
// witness already achieves it, leftovers go to the last agent.
Allocation complete_witness(const Instance& inst, const Ordering& sigma, Value theta) {
  std::vector<Value> targets(sigma.agents.size(), theta);
  auto witness = greedy_feasible(inst, sigma, targets);
  if (!witness) throw std::logic_error("theta must be feasible");
  int covered = 0;
  for (const Bundle& b : witness->bundles)
    if (b) covered = std::max(covered, b->hi);
  if (covered < inst.num_goods()) {
    const int last = sigma.at(sigma.size() - 1);
    Bundle& b = witness->bundles[last];
    if (b)
      b->hi = inst.num_goods();
    else
      b = Interval{covered + 1, inst.num_goods()};
  }
  return *witness;
}

}  // namespace

Allocation eq1_complete(const Instance& inst, const Ordering& sigma, SearchMode mode) {
  require_goods(inst);
  ThetaCertificate cert = optimal_theta(inst, sigma, mode);
  const int n = sigma.size();

  if (!cert.next_value) return complete_witness(inst, sigma, cert.theta);

  UnsafeScan scan = leftmost_unsafe(inst, sigma, cert);
  const int i = scan.unsafe_pos;

  Allocation out;
  out.order = sigma;
  out.bundles = scan.prefix;
  int left_frontier = 1;
  for (int k = 0; k < i; ++k) {
    const Bundle& b = out.bundles[sigma.at(k)];
    if (b) left_frontier = std::max(left_frontier, b->hi + 1);
  }

  // Right-to-left minimal bundles worth theta for the agents after the
  // unsafe one; the unsafe agent absorbs the middle leftovers.
  int right_frontier = inst.num_goods();
  for (int k = n - 1; k > i; --k) {
    const int agent = sigma.at(k);
    if (cert.theta <= 0) continue;
    if (right_frontier < left_frontier)
      throw std::logic_error("right-to-left scan must fit next to the fixed prefix");
    int start = minimal_start(inst, agent, right_frontier, cert.theta);
    if (start == 0 || start < left_frontier)
      throw std::logic_error("right-to-left scan must fit next to the fixed prefix");
    out.bundles[agent] = Interval{start, right_frontier};
    right_frontier = start - 1;
  }
  if (left_frontier <= right_frontier)
    out.bundles[sigma.at(i)] = Interval{left_frontier, right_frontier};

  // The unsafe agent ends exactly at theta and everyone sits at or above it.
  std::vector<Value> profile = metrics::utility_profile(inst, out);
  if (profile[sigma.at(i)] != cert.theta)
    throw std::logic_error("unsafe agent's utility must equal theta");
  for (int k = 0; k < n; ++k) {
    Value expect = k < i ? *cert.next_value : cert.theta;
    if (profile[sigma.at(k)] < expect)
      throw std::logic_error("scan produced a bundle below its target");
  }
  return out;
}

Allocation eq1_complete_chores(const Instance& inst, const Ordering& sigma) {
  if (inst.kind() != ItemKind::Chores)
    fail(Error::Code::KindMismatch, "chores solver expects a chores instance");
  Allocation out = eq1_complete(inst.negated(), sigma);
  if (!metrics::is_eq1_chores(inst, out))
    throw std::logic_error("mirrored allocation must be EQ1 for chores");
  return out;
}

}  // namespace eqpath::egal
