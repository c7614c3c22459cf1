#include "eqpath/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace eqpath::metrics {

Rational parse_ratio(const std::string& text) {
  Rational r;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      r.num = std::stoll(text);
      r.den = 1;
    } else {
      r.num = std::stoll(text.substr(0, slash));
      r.den = std::stoll(text.substr(slash + 1));
    }
  } catch (const std::exception&) {
    fail(Error::Code::ParseError, "cannot parse ratio '" + text + "'");
  }
  return r;
}

namespace {

void require_kind(const Instance& inst, ItemKind kind, const char* what) {
  if (inst.kind() != kind)
    fail(Error::Code::KindMismatch, std::string(what) + " requires a " +
                                        (kind == ItemKind::Goods ? "goods" : "chores") + " instance");
}

void check_alpha(const Rational& alpha) {
  if (alpha.den <= 0 || alpha.num < 0 || alpha.num > alpha.den)
    fail(Error::Code::InvalidAlpha, "alpha must be a rational in [0, 1]");
}

}  // namespace

std::vector<Value> utility_profile(const Instance& inst, const Allocation& alloc) {
  std::vector<Value> profile(inst.num_agents());
  for (int i = 0; i < inst.num_agents(); ++i) profile[i] = inst.value(i, alloc.bundles[i]);
  return profile;
}

Value utilitarian_welfare(const Instance& inst, const Allocation& alloc) {
  auto p = utility_profile(inst, alloc);
  return std::accumulate(p.begin(), p.end(), Value{0});
}

Value egalitarian_welfare(const Instance& inst, const Allocation& alloc) {
  auto p = utility_profile(inst, alloc);
  return *std::min_element(p.begin(), p.end());
}

Value min_one_removed(const Valuation& valuation, const Interval& iv) {
  if (iv.size() == 1) return 0;
  if (valuation.is_additive()) {
    Value total = valuation.interval(iv);
    Value best = valuation.single(iv.lo);
    for (int j = iv.lo + 1; j <= iv.hi; ++j) best = std::max(best, valuation.single(j));
    return total - best;
  }
  return std::min(valuation.interval({iv.lo + 1, iv.hi}), valuation.interval({iv.lo, iv.hi - 1}));
}

Value max_one_removed(const Valuation& valuation, const Interval& iv) {
  if (iv.size() == 1) return 0;
  if (valuation.is_additive()) {
    Value total = valuation.interval(iv);
    Value worst = valuation.single(iv.lo);
    for (int j = iv.lo + 1; j <= iv.hi; ++j) worst = std::min(worst, valuation.single(j));
    return total - worst;
  }
  return std::max(valuation.interval({iv.lo + 1, iv.hi}), valuation.interval({iv.lo, iv.hi - 1}));
}

bool is_eq(const Instance& inst, const Allocation& alloc) {
  auto p = utility_profile(inst, alloc);
  return std::all_of(p.begin(), p.end(), [&](Value v) { return v == p[0]; });
}

bool is_eq1(const Instance& inst, const Allocation& alloc) {
  require_kind(inst, ItemKind::Goods, "EQ1");
  auto p = utility_profile(inst, alloc);
  const int n = inst.num_agents();
  for (int k = 0; k < n; ++k) {
    if (!alloc.bundles[k]) continue;
    Value reduced = min_one_removed(inst.agent(k).valuation, *alloc.bundles[k]);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      if (p[i] < reduced) return false;
    }
  }
  return true;
}

bool is_ef(const Instance& inst, const Allocation& alloc) {
  require_kind(inst, ItemKind::Goods, "EF");
  auto p = utility_profile(inst, alloc);
  const int n = inst.num_agents();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      if (p[i] < inst.value(i, alloc.bundles[k])) return false;
    }
  return true;
}

bool is_ef1(const Instance& inst, const Allocation& alloc) {
  require_kind(inst, ItemKind::Goods, "EF1");
  auto p = utility_profile(inst, alloc);
  const int n = inst.num_agents();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k || !alloc.bundles[k]) continue;
      if (p[i] < min_one_removed(inst.agent(i).valuation, *alloc.bundles[k])) return false;
    }
  return true;
}

bool is_alpha_eq1(const Instance& inst, const Allocation& alloc, const Rational& alpha) {
  require_kind(inst, ItemKind::Goods, "alpha-EQ1");
  check_alpha(alpha);
  auto p = utility_profile(inst, alloc);
  const int n = inst.num_agents();
  for (int k = 0; k < n; ++k) {
    if (!alloc.bundles[k]) continue;
    Value reduced = min_one_removed(inst.agent(k).valuation, *alloc.bundles[k]);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      if (alpha.den * p[i] < alpha.num * reduced) return false;
    }
  }
  return true;
}

bool is_alpha_ef1(const Instance& inst, const Allocation& alloc, const Rational& alpha) {
  require_kind(inst, ItemKind::Goods, "alpha-EF1");
  check_alpha(alpha);
  auto p = utility_profile(inst, alloc);
  const int n = inst.num_agents();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k || !alloc.bundles[k]) continue;
      Value reduced = min_one_removed(inst.agent(i).valuation, *alloc.bundles[k]);
      if (alpha.den * p[i] < alpha.num * reduced) return false;
    }
  return true;
}

bool is_umax_eq(const Instance& inst, const Allocation& alloc) {
  require_kind(inst, ItemKind::Goods, "umax-EQ");
  auto p = utility_profile(inst, alloc);
  Value u_max = realizable_utilities(inst).u_max;
  auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  return *hi - *lo <= u_max;
}

bool is_nw(const Instance& inst, const Allocation& alloc) {
  require_kind(inst, ItemKind::Goods, "NW");
  std::vector<int> holder(inst.num_goods() + 1, -1);
  for (int i = 0; i < inst.num_agents(); ++i) {
    const Bundle& b = alloc.bundles[i];
    if (!b) continue;
    for (int j = b->lo; j <= b->hi; ++j) {
      if (holder[j] != -1) return false;  // overlapping bundles waste a good
      holder[j] = i;
    }
  }
  for (int j = 1; j <= inst.num_goods(); ++j)
    if (holder[j] == -1 || inst.single(holder[j], j) <= 0) return false;
  return true;
}

bool is_eq1_chores(const Instance& inst, const Allocation& alloc) {
  require_kind(inst, ItemKind::Chores, "EQ1 for chores");
  auto p = utility_profile(inst, alloc);
  const int n = inst.num_agents();
  for (int i = 0; i < n; ++i) {
    if (!alloc.bundles[i]) continue;
    Value raised = max_one_removed(inst.agent(i).valuation, *alloc.bundles[i]);
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      if (raised < p[k]) return false;
    }
  }
  return true;
}

std::pair<int, int> sparsity(const Instance& inst) {
  if (!inst.is_binary()) fail(Error::Code::NotBinary, "sparsity is defined for binary instances");
  int a = 0;
  std::vector<int> per_good(inst.num_goods(), 0);
  for (int i = 0; i < inst.num_agents(); ++i) {
    int approvals = 0;
    for (int j = 1; j <= inst.num_goods(); ++j) {
      if (inst.single(i, j) == 1) {
        ++approvals;
        ++per_good[j - 1];
      }
    }
    a = std::max(a, approvals);
  }
  int b = per_good.empty() ? 0 : *std::max_element(per_good.begin(), per_good.end());
  return {a, b};
}

CheckReport basic_report(const Instance& inst, const Allocation& alloc) {
  CheckReport rep;
  ValidationReport v = validate_allocation(inst, alloc);
  rep.predicates.emplace_back("connected", v.connected);
  rep.predicates.emplace_back("disjoint", v.disjoint);
  rep.predicates.emplace_back("sigma_consistent", v.sigma_consistent);
  rep.predicates.emplace_back("complete", v.complete);
  if (inst.kind() == ItemKind::Goods)
    rep.predicates.emplace_back("eq1", is_eq1(inst, alloc));
  else
    rep.predicates.emplace_back("eq1_chores", is_eq1_chores(inst, alloc));
  rep.utilities = utility_profile(inst, alloc);
  rep.utilitarian = std::accumulate(rep.utilities.begin(), rep.utilities.end(), Value{0});
  rep.egalitarian = *std::min_element(rep.utilities.begin(), rep.utilities.end());
  return rep;
}

}  // namespace eqpath::metrics
