#include "eqpath/postar.hpp"

#include <algorithm>

#include "eqpath/egalitarian.hpp"
#include "eqpath/metrics.hpp"

namespace eqpath::postar {

namespace {

void require_binary_goods(const Instance& inst) {
  if (inst.kind() != ItemKind::Goods)
    fail(Error::Code::KindMismatch, "the PO* solver expects a goods instance");
  if (!inst.is_binary())
    fail(Error::Code::NotBinary, "the PO* solver expects binary additive valuations");
}

int minimal_end(const Instance& inst, int agent, int frontier, Value target) {
  for (int r = frontier; r <= inst.num_goods(); ++r)
    if (inst.value(agent, Interval{frontier, r}) >= target) return r;
  return 0;
}

int minimal_start(const Instance& inst, int agent, int frontier, Value target) {
  for (int l = frontier; l >= 1; --l)
    if (inst.value(agent, Interval{l, frontier}) >= target) return l;
  return 0;
}

// Can every sigma position in [from_pos, n) still reach `target` by a
// left-to-right minimal scan starting at `frontier`?
bool successors_reach(const Instance& inst, const Ordering& sigma, int from_pos, int frontier,
                      Value target) {
  if (target <= 0) return true;
  for (int k = from_pos; k < sigma.size(); ++k) {
    if (frontier > inst.num_goods()) return false;
    int end = minimal_end(inst, sigma.at(k), frontier, target);
    if (end == 0) return false;
    frontier = end + 1;
  }
  return true;
}

}  // namespace

GroupLabeling classify_groups(const Instance& inst, const Ordering& sigma, Value theta,
                              int unsafe_pos, const std::vector<Bundle>& prefix) {
  require_binary_goods(inst);
  sigma.validate(inst.num_agents());
  const int n = sigma.size();

  GroupLabeling lab;
  lab.unsafe_pos = unsafe_pos;
  lab.labels.assign(n, Group::One);
  lab.tentative = prefix;

  int frontier = 1;
  for (int k = 0; k < unsafe_pos; ++k) {
    const Bundle& b = lab.tentative[sigma.at(k)];
    if (b) frontier = std::max(frontier, b->hi + 1);
  }

  for (int j = unsafe_pos; j < n; ++j) {
    const int agent = sigma.at(j);
    bool group_one = false;
    int plus_end = 0;
    if (frontier <= inst.num_goods()) {
      plus_end = minimal_end(inst, agent, frontier, theta + 1);
      group_one = plus_end != 0 && successors_reach(inst, sigma, j + 1, plus_end + 1, theta);
    }
    if (group_one) {
      lab.labels[j] = Group::One;
      lab.tentative[agent] = Interval{frontier, plus_end};
      frontier = plus_end + 1;
    } else {
      lab.labels[j] = Group::Two;
      if (theta > 0) {
        int end = minimal_end(inst, agent, frontier, theta);
        if (end == 0) throw std::logic_error("a theta bundle must remain available in the grouping pass");
        lab.tentative[agent] = Interval{frontier, end};
        frontier = end + 1;
      }
    }
  }

  if (lab.labels[unsafe_pos] != Group::Two)
    throw std::logic_error("the unsafe agent always lands in group 2");
  return lab;
}

namespace {

Allocation finalize_and_check(const Instance& inst, Allocation out, Value theta) {
  std::vector<Value> profile = metrics::utility_profile(inst, out);
  for (Value u : profile)
    if (u != theta && u != theta + 1)
      throw std::logic_error("PO* utilities must be theta or theta+1");
  if (!metrics::is_eq1(inst, out)) throw std::logic_error("PO* output must be EQ1");
  return out;
}

}  // namespace

Allocation po_star(const Instance& inst, const Ordering& sigma) {
  require_binary_goods(inst);
  sigma.validate(inst.num_agents());
  const int n = sigma.size();
  const int m = inst.num_goods();

  egal::ThetaCertificate cert = egal::optimal_theta(inst, sigma);
  const Value theta = cert.theta;

  // Theta maximal: the greedy witness already has every utility equal to
  // theta; completing it keeps that (no bundle can exceed the maximum).
  if (!cert.next_value) return finalize_and_check(inst, egal::eq1_complete(inst, sigma), theta);

  egal::UnsafeScan scan = egal::leftmost_unsafe(inst, sigma, cert);
  GroupLabeling lab = classify_groups(inst, sigma, theta, scan.unsafe_pos, scan.prefix);
  const int i = lab.unsafe_pos;

  // First completion: keep tentative bundles, hand the tail to the last agent.
  {
    Allocation out;
    out.order = sigma;
    out.bundles = lab.tentative;
    const int last = sigma.at(n - 1);
    int covered = 0;
    for (int k = 0; k < n - 1; ++k) {
      const Bundle& b = out.bundles[sigma.at(k)];
      if (b) covered = std::max(covered, b->hi);
    }
    if (covered < m)
      out.bundles[last] = Interval{out.bundles[last] ? out.bundles[last]->lo : covered + 1, m};
    else
      out.bundles[last] = std::nullopt;
    if (inst.value(last, out.bundles[last]) <= theta + 1) return finalize_and_check(inst, out, theta);
  }

  // Second completion: right-to-left minimal bundles at each group's target,
  // leftovers to the unsafe agent.
  Allocation out;
  out.order = sigma;
  out.bundles = scan.prefix;
  int left_frontier = 1;
  for (int k = 0; k < i; ++k) {
    const Bundle& b = out.bundles[sigma.at(k)];
    if (b) left_frontier = std::max(left_frontier, b->hi + 1);
  }
  int right_frontier = m;
  for (int k = n - 1; k > i; --k) {
    const int agent = sigma.at(k);
    const Value target = lab.labels[k] == Group::One ? theta + 1 : theta;
    if (target <= 0) continue;
    if (right_frontier < left_frontier)
      throw std::logic_error("right-to-left rebuild must fit next to the fixed prefix");
    int start = minimal_start(inst, agent, right_frontier, target);
    if (start == 0 || start < left_frontier)
      throw std::logic_error("right-to-left rebuild must fit next to the fixed prefix");
    out.bundles[agent] = Interval{start, right_frontier};
    right_frontier = start - 1;
  }
  if (left_frontier <= right_frontier)
    out.bundles[sigma.at(i)] = Interval{left_frontier, right_frontier};
  return finalize_and_check(inst, out, theta);
}

}  // namespace eqpath::postar
