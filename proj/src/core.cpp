#include "eqpath/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace eqpath {

void fail(Error::Code code, const std::string& msg) { throw Error(code, msg); }

Valuation Valuation::additive(std::vector<Value> per_good) {
  Valuation v;
  v.additive_ = true;
  v.m_ = static_cast<int>(per_good.size());
  v.values_ = std::move(per_good);
  v.prefix_.assign(v.m_ + 1, 0);
  for (int j = 1; j <= v.m_; ++j) v.prefix_[j] = v.prefix_[j - 1] + v.values_[j - 1];
  return v;
}

Valuation Valuation::interval_table(int num_goods, std::vector<std::vector<Value>> rows) {
  if (num_goods < 1) fail(Error::Code::InvalidInstance, "interval table needs at least one good");
  if (static_cast<int>(rows.size()) != num_goods)
    fail(Error::Code::InvalidInstance, "interval table must have one row per left endpoint");
  Valuation v;
  v.additive_ = false;
  v.m_ = num_goods;
  v.table_.reserve(static_cast<std::size_t>(num_goods) * (num_goods + 1) / 2);
  for (int l = 1; l <= num_goods; ++l) {
    if (static_cast<int>(rows[l - 1].size()) != num_goods - l + 1)
      fail(Error::Code::InvalidInstance, "interval table row " + std::to_string(l) + " has wrong length");
    for (Value x : rows[l - 1]) v.table_.push_back(x);
  }
  return v;
}

std::size_t Valuation::table_index(int lo, int hi) const {
  // row lo starts after rows 1..lo-1 of lengths m, m-1, ...
  std::size_t base = static_cast<std::size_t>(lo - 1) * m_ - static_cast<std::size_t>(lo - 1) * (lo - 2) / 2;
  return base + static_cast<std::size_t>(hi - lo);
}

Value Valuation::single(int good) const {
  if (additive_) return values_[good - 1];
  return table_[table_index(good, good)];
}

Value Valuation::interval(const Interval& iv) const {
  if (additive_) return prefix_[iv.hi] - prefix_[iv.lo - 1];
  return table_[table_index(iv.lo, iv.hi)];
}

const std::vector<Value>& Valuation::per_good_values() const {
  if (!additive_) fail(Error::Code::InvalidInstance, "per-good values only exist for additive valuations");
  return values_;
}

namespace {

void validate_valuation(ItemKind kind, int m, const std::string& name, const Valuation& v) {
  if (v.num_goods() != m)
    fail(Error::Code::InvalidInstance, "agent " + name + " valuation covers wrong number of goods");
  if (v.is_additive()) {
    for (int j = 1; j <= m; ++j) {
      Value x = v.single(j);
      if (kind == ItemKind::Goods && x < 0)
        fail(Error::Code::InvalidInstance, "goods instance has negative value for agent " + name);
      if (kind == ItemKind::Chores && x > 0)
        fail(Error::Code::InvalidInstance, "chores instance has positive value for agent " + name);
    }
    return;
  }
  // Table entries: sign per kind, and one-step set inclusion monotone
  // (increasing for goods, decreasing for chores). Single-step checks imply
  // the full subset ordering.
  for (int l = 1; l <= m; ++l) {
    for (int r = l; r <= m; ++r) {
      Value x = v.interval({l, r});
      if (kind == ItemKind::Goods && x < 0)
        fail(Error::Code::InvalidInstance, "goods interval table has negative entry for agent " + name);
      if (kind == ItemKind::Chores && x > 0)
        fail(Error::Code::InvalidInstance, "chores interval table has positive entry for agent " + name);
      Value single_dir = kind == ItemKind::Goods ? 1 : -1;
      if (r < m && single_dir * (v.interval({l, r + 1}) - x) < 0)
        fail(Error::Code::InvalidInstance, "interval table for agent " + name + " is not monotone");
      if (l > 1 && single_dir * (v.interval({l - 1, r}) - x) < 0)
        fail(Error::Code::InvalidInstance, "interval table for agent " + name + " is not monotone");
    }
  }
}

}  // namespace

Instance::Instance(ItemKind kind, int num_goods, std::vector<Agent> agents)
    : kind_(kind), m_(num_goods), agents_(std::move(agents)) {
  if (m_ < 1) fail(Error::Code::InvalidInstance, "instance needs at least one good");
  if (agents_.empty()) fail(Error::Code::InvalidInstance, "instance needs at least one agent");
  std::set<std::string> names;
  for (const Agent& a : agents_) {
    if (!names.insert(a.name).second)
      fail(Error::Code::InvalidInstance, "duplicate agent name " + a.name);
    validate_valuation(kind_, m_, a.name, a.valuation);
  }
}

const Agent& Instance::agent(int index) const {
  if (index < 0 || index >= num_agents())
    fail(Error::Code::UnknownAgent, "agent index " + std::to_string(index) + " out of range");
  return agents_[index];
}

int Instance::agent_index(const std::string& name) const {
  for (int i = 0; i < num_agents(); ++i)
    if (agents_[i].name == name) return i;
  return -1;
}

Value Instance::value(int agent_id, const Bundle& bundle) const {
  const Agent& a = agent(agent_id);
  if (!bundle) return 0;
  if (bundle->lo < 1 || bundle->hi > m_ || bundle->lo > bundle->hi)
    fail(Error::Code::InvalidInterval,
         "interval [" + std::to_string(bundle->lo) + "," + std::to_string(bundle->hi) + "] out of range");
  return a.valuation.interval(*bundle);
}

Value Instance::single(int agent_id, int good) const {
  const Agent& a = agent(agent_id);
  if (good < 1 || good > m_) fail(Error::Code::InvalidInterval, "good index out of range");
  return a.valuation.single(good);
}

bool Instance::is_binary() const {
  for (const Agent& a : agents_) {
    if (!a.valuation.is_additive()) return false;
    for (Value x : a.valuation.per_good_values())
      if (x != 0 && x != 1) return false;
  }
  return true;
}

Instance Instance::negated() const {
  std::vector<Agent> flipped;
  flipped.reserve(agents_.size());
  for (const Agent& a : agents_) {
    if (a.valuation.is_additive()) {
      std::vector<Value> vals = a.valuation.per_good_values();
      for (Value& x : vals) x = -x;
      flipped.push_back({a.name, Valuation::additive(std::move(vals))});
    } else {
      std::vector<std::vector<Value>> rows(m_);
      for (int l = 1; l <= m_; ++l)
        for (int r = l; r <= m_; ++r) rows[l - 1].push_back(-a.valuation.interval({l, r}));
      flipped.push_back({a.name, Valuation::interval_table(m_, std::move(rows))});
    }
  }
  ItemKind other = kind_ == ItemKind::Goods ? ItemKind::Chores : ItemKind::Goods;
  return Instance(other, m_, std::move(flipped));
}

Instance Instance::as_interval_table() const {
  std::vector<Agent> converted;
  converted.reserve(agents_.size());
  for (const Agent& a : agents_) {
    std::vector<std::vector<Value>> rows(m_);
    for (int l = 1; l <= m_; ++l)
      for (int r = l; r <= m_; ++r) rows[l - 1].push_back(a.valuation.interval({l, r}));
    converted.push_back({a.name, Valuation::interval_table(m_, std::move(rows))});
  }
  return Instance(kind_, m_, std::move(converted));
}

Ordering Ordering::identity(int n) {
  Ordering o;
  o.agents.resize(n);
  std::iota(o.agents.begin(), o.agents.end(), 0);
  return o;
}

void Ordering::validate(int n) const {
  if (static_cast<int>(agents.size()) != n)
    fail(Error::Code::UnknownAgent, "ordering must list every agent exactly once");
  std::vector<bool> seen(n, false);
  for (int a : agents) {
    if (a < 0 || a >= n || seen[a])
      fail(Error::Code::UnknownAgent, "ordering is not a permutation of the agents");
    seen[a] = true;
  }
}

ValidationReport validate_allocation(const Instance& inst, const Allocation& alloc) {
  const int m = inst.num_goods();
  const int n = inst.num_agents();
  if (static_cast<int>(alloc.bundles.size()) != n)
    fail(Error::Code::UnknownAgent, "allocation must carry one bundle per agent");
  alloc.order.validate(n);

  ValidationReport rep;
  rep.connected = true;
  for (const Bundle& b : alloc.bundles) {
    if (!b) continue;
    if (b->lo < 1 || b->hi > m || b->lo > b->hi) rep.connected = false;
  }

  std::vector<int> cover(m + 1, 0);
  rep.disjoint = true;
  for (const Bundle& b : alloc.bundles) {
    if (!b || !rep.connected) continue;
    for (int j = b->lo; j <= b->hi; ++j) {
      if (cover[j]++) rep.disjoint = false;
    }
  }

  rep.sigma_consistent = true;
  int prev_hi = 0;
  for (int pos = 0; pos < n; ++pos) {
    const Bundle& b = alloc.bundles[alloc.order.at(pos)];
    if (!b) continue;
    if (b->lo <= prev_hi) rep.sigma_consistent = false;
    prev_hi = std::max(prev_hi, b->hi);
  }

  rep.complete = rep.connected && rep.disjoint;
  for (int j = 1; j <= m && rep.complete; ++j)
    if (cover[j] != 1) rep.complete = false;
  return rep;
}

std::optional<Value> RealizableUtilityList::successor(Value v) const {
  auto it = std::upper_bound(values.begin(), values.end(), v);
  if (it == values.end()) return std::nullopt;
  return *it;
}

RealizableUtilityList realizable_utilities(const Instance& inst) {
  std::set<Value> distinct;
  distinct.insert(0);
  Value u_max = 0;
  bool first_single = true;
  for (int i = 0; i < inst.num_agents(); ++i) {
    for (int l = 1; l <= inst.num_goods(); ++l) {
      for (int r = l; r <= inst.num_goods(); ++r)
        distinct.insert(inst.value(i, Interval{l, r}));
      Value s = inst.single(i, l);
      if (first_single || s > u_max) u_max = s;
      first_single = false;
    }
  }
  RealizableUtilityList out;
  out.values.assign(distinct.begin(), distinct.end());
  out.u_max = u_max;
  return out;
}

Value bundle_value(const Instance& inst, int agent, const Bundle& bundle) {
  return inst.value(agent, bundle);
}

}  // namespace eqpath
