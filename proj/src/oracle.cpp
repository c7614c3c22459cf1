#include "eqpath/oracle.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <numeric>

#include "eqpath/metrics.hpp"

namespace eqpath::oracle {

namespace {

constexpr long long kSaturated = LLONG_MAX / 4;

long long comb_sat(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > static_cast<unsigned __int128>(kSaturated)) return kSaturated;
  }
  return static_cast<long long>(r);
}

long long factorial_sat(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) {
    if (r > kSaturated / i) return kSaturated;
    r *= i;
  }
  return r;
}

long long count_compositions(int m, int n) { return comb_sat(m + n - 1, n - 1); }

void check_budget(long long total, const EnumerationBudget& budget) {
  if (budget.max_states <= 0) fail(Error::Code::InvalidInstance, "enumeration budget must be positive");
  if (total > budget.max_states)
    fail(Error::Code::BudgetExceeded, "enumeration space of " + std::to_string(total) +
                                          " allocations exceeds budget " + std::to_string(budget.max_states));
}

int thread_chunks(long long total) {
  long long chunks = std::min<long long>(total, 64);
  return static_cast<int>(std::max<long long>(chunks, 1));
}

std::vector<Value> profile_of(const Instance& inst, const Ordering& order,
                              const std::vector<int>& sizes) {
  std::vector<Value> p(inst.num_agents(), 0);
  int pos = 1;
  for (int k = 0; k < order.size(); ++k) {
    int s = sizes[k];
    if (s > 0) p[order.at(k)] = inst.value(order.at(k), Interval{pos, pos + s - 1});
    pos += s;
  }
  return p;
}

}  // namespace

long long count_complete(int num_goods, int num_agents, bool sigma_free) {
  long long comps = count_compositions(num_goods, num_agents);
  if (!sigma_free) return comps;
  long long perms = factorial_sat(num_agents);
  if (comps > 0 && perms > kSaturated / comps) return kSaturated;
  return comps * perms;
}

bool next_composition(std::vector<int>& sizes) {
  const int n = static_cast<int>(sizes.size());
  int suffix = 0;
  for (int j = n - 2; j >= 0; --j) {
    suffix += sizes[j + 1];
    if (suffix > 0) {
      sizes[j] += 1;
      for (int t = j + 1; t < n - 1; ++t) sizes[t] = 0;
      sizes[n - 1] = suffix - 1;
      return true;
    }
  }
  return false;
}

std::vector<int> unrank_composition(long long index, int num_goods, int num_agents) {
  std::vector<int> sizes(num_agents, 0);
  int remaining = num_goods;
  for (int k = 0; k < num_agents - 1; ++k) {
    int digit = 0;
    while (true) {
      long long block = count_compositions(remaining - digit, num_agents - k - 1);
      if (index < block) break;
      index -= block;
      ++digit;
    }
    sizes[k] = digit;
    remaining -= digit;
  }
  sizes[num_agents - 1] = remaining;
  return sizes;
}

Allocation allocation_from_sizes(const Ordering& order, const std::vector<int>& sizes) {
  Allocation a;
  a.order = order;
  a.bundles.assign(order.size(), std::nullopt);
  int pos = 1;
  for (int k = 0; k < order.size(); ++k) {
    if (sizes[k] > 0) a.bundles[order.at(k)] = Interval{pos, pos + sizes[k] - 1};
    pos += sizes[k];
  }
  return a;
}

void enumerate_complete(const Instance& inst, const std::optional<Ordering>& sigma,
                        const EnumerationBudget& budget,
                        const std::function<bool(const Allocation&)>& visit) {
  const int m = inst.num_goods();
  const int n = inst.num_agents();
  check_budget(count_complete(m, n, !sigma.has_value()), budget);

  std::vector<Ordering> orders;
  if (sigma) {
    sigma->validate(n);
    orders.push_back(*sigma);
  } else {
    Ordering o = Ordering::identity(n);
    do {
      orders.push_back(o);
    } while (std::next_permutation(o.agents.begin(), o.agents.end()));
  }

  for (const Ordering& order : orders) {
    std::vector<int> sizes(n, 0);
    sizes[n - 1] = m;
    do {
      if (!visit(allocation_from_sizes(order, sizes))) return;
    } while (next_composition(sizes));
  }
}

namespace {

// Sweeps all compositions of m into n parts. The functor sees
// (composition index, sizes, profile) and returns true to keep scanning a
// chunk; chunks merge deterministically afterwards.
template <typename Fn>
void sweep_profiles_serial(const Instance& inst, const Ordering& order, Fn&& fn) {
  const int n = inst.num_agents();
  std::vector<int> sizes(n, 0);
  sizes[n - 1] = inst.num_goods();
  long long idx = 0;
  do {
    if (!fn(idx, sizes, profile_of(inst, order, sizes))) return;
    ++idx;
  } while (next_composition(sizes));
}

struct EgalBest {
  bool found = false;
  Value value = 0;
  long long index = 0;

  void offer(Value v, long long idx) {
    if (!found || v > value || (v == value && idx < index)) {
      found = true;
      value = v;
      index = idx;
    }
  }
  void merge(const EgalBest& other) {
    if (other.found) offer(other.value, other.index);
  }
};

EgalBest max_egalitarian_serial(const Instance& inst, const Ordering& sigma) {
  EgalBest best;
  sweep_profiles_serial(inst, sigma, [&](long long idx, const std::vector<int>&, const std::vector<Value>& p) {
    best.offer(*std::min_element(p.begin(), p.end()), idx);
    return true;
  });
  return best;
}

EgalBest max_egalitarian_parallel(const Instance& inst, const Ordering& sigma) {
  const int m = inst.num_goods();
  const int n = inst.num_agents();
  const long long total = count_compositions(m, n);
  const int chunks = thread_chunks(total);
  std::vector<EgalBest> partial(chunks);

#pragma omp parallel for schedule(dynamic, 1)
  for (int c = 0; c < chunks; ++c) {
    long long begin = total * c / chunks;
    long long end = total * (c + 1) / chunks;
    if (begin >= end) continue;
    std::vector<int> sizes = unrank_composition(begin, m, n);
    EgalBest local;
    for (long long idx = begin; idx < end; ++idx) {
      std::vector<Value> p = profile_of(inst, sigma, sizes);
      local.offer(*std::min_element(p.begin(), p.end()), idx);
      next_composition(sizes);
    }
    partial[c] = local;
  }

  EgalBest best;
  for (const EgalBest& b : partial) best.merge(b);
  return best;
}

}  // namespace

MaxEgalitarian max_egalitarian(const Instance& inst, const Ordering& sigma,
                               const EnumerationBudget& budget, ExecMode mode) {
  sigma.validate(inst.num_agents());
  const long long total = count_compositions(inst.num_goods(), inst.num_agents());
  check_budget(total, budget);
  EgalBest best = mode == ExecMode::Serial ? max_egalitarian_serial(inst, sigma)
                                           : max_egalitarian_parallel(inst, sigma);
  std::vector<int> sizes = unrank_composition(best.index, inst.num_goods(), inst.num_agents());
  return {best.value, allocation_from_sizes(sigma, sizes)};
}

namespace {

bool satisfies(const Instance& inst, const PropertyQuery& q, const Allocation& a,
               const std::vector<Value>& profile) {
  if (q.egal_at_least && *std::min_element(profile.begin(), profile.end()) < *q.egal_at_least)
    return false;
  if (q.util_at_least &&
      std::accumulate(profile.begin(), profile.end(), Value{0}) < *q.util_at_least)
    return false;
  if (q.nw && !metrics::is_nw(inst, a)) return false;
  if (q.eq1 && !metrics::is_eq1(inst, a)) return false;
  if (q.ef1 && !metrics::is_ef1(inst, a)) return false;
  if (q.po && !pareto_undominated(inst, a, DominationScope::All)) return false;
  return true;
}

// First composition index in [0, total) satisfying the query, or -1.
long long first_hit_parallel(const Instance& inst, const PropertyQuery& q, const Ordering& order,
                             long long total) {
  const int m = inst.num_goods();
  const int n = inst.num_agents();
  const int chunks = thread_chunks(total);
  std::vector<long long> hits(chunks, -1);

#pragma omp parallel for schedule(dynamic, 1)
  for (int c = 0; c < chunks; ++c) {
    long long begin = total * c / chunks;
    long long end = total * (c + 1) / chunks;
    if (begin >= end) continue;
    std::vector<int> sizes = unrank_composition(begin, m, n);
    for (long long idx = begin; idx < end; ++idx) {
      Allocation a = allocation_from_sizes(order, sizes);
      if (satisfies(inst, q, a, profile_of(inst, order, sizes))) {
        hits[c] = idx;
        break;
      }
      next_composition(sizes);
    }
  }

  for (int c = 0; c < chunks; ++c)
    if (hits[c] >= 0) return hits[c];
  return -1;
}

}  // namespace

std::optional<Allocation> exists_satisfying(const Instance& inst, const PropertyQuery& query,
                                            const std::optional<Ordering>& sigma,
                                            const EnumerationBudget& budget, ExecMode mode) {
  const int m = inst.num_goods();
  const int n = inst.num_agents();
  check_budget(count_complete(m, n, !sigma.has_value()), budget);

  std::vector<Ordering> orders;
  if (sigma) {
    sigma->validate(n);
    orders.push_back(*sigma);
  } else {
    Ordering o = Ordering::identity(n);
    do {
      orders.push_back(o);
    } while (std::next_permutation(o.agents.begin(), o.agents.end()));
  }

  const long long comps = count_compositions(m, n);
  for (const Ordering& order : orders) {
    if (mode == ExecMode::Serial) {
      std::optional<Allocation> found;
      sweep_profiles_serial(inst, order,
                            [&](long long, const std::vector<int>& sizes, const std::vector<Value>& p) {
                              Allocation a = allocation_from_sizes(order, sizes);
                              if (satisfies(inst, query, a, p)) {
                                found = std::move(a);
                                return false;
                              }
                              return true;
                            });
      if (found) return found;
    } else {
      long long hit = first_hit_parallel(inst, query, order, comps);
      if (hit >= 0) return allocation_from_sizes(order, unrank_composition(hit, m, n));
    }
  }
  return std::nullopt;
}

namespace {

constexpr int kMaxDpAgents = 22;
constexpr int kMaxDpGoods = 63;

void check_dp_size(const Instance& inst) {
  if (inst.num_agents() > kMaxDpAgents || inst.num_goods() > kMaxDpGoods)
    fail(Error::Code::InstanceTooLarge, "instance too large for the exact target search");
}

// reach[mask] holds, as bits, the path prefixes coverable by giving every
// agent in mask one nonempty block worth at least its target. Monotone goods
// valuations make every extension of a qualifying block qualify too.
bool targets_feasible(const Instance& inst, const std::vector<Value>& targets) {
  const int m = inst.num_goods();
  const int n = inst.num_agents();
  const std::uint64_t full = (m + 1 >= 64) ? ~0ULL : ((1ULL << (m + 1)) - 1);

  std::vector<std::uint64_t> reach(std::size_t{1} << n, 0);
  reach[0] = 1;
  std::uint64_t skippable = 0;  // agents allowed to end up empty
  for (int a = 0; a < n; ++a)
    if (targets[a] <= 0) skippable |= 1ULL << a;

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint64_t from = reach[mask];
    if (!from) continue;
    // reach[mask] is final here: contributions only flow to supersets.
    if (((from >> m) & 1) && (~mask & ((std::uint64_t{1} << n) - 1) & ~skippable) == 0)
      return true;
    for (int a = 0; a < n; ++a) {
      if (mask & (1ULL << a)) continue;
      std::uint64_t next = 0;
      std::uint64_t bits = from & ~(std::uint64_t{1} << m);  // blocks start before the end
      while (bits) {
        int pos = std::countr_zero(bits);
        bits &= bits - 1;
        int e = pos + 1;
        while (e <= m && inst.value(a, Interval{pos + 1, e}) < targets[a]) ++e;
        if (e <= m) next |= full & ~((std::uint64_t{1} << e) - 1);  // all ends >= e work
      }
      if (next) reach[mask | (1ULL << a)] |= next;
    }
  }
  return false;
}

}  // namespace

bool exists_complete_with_targets(const Instance& inst, const std::vector<Value>& targets) {
  if (inst.kind() != ItemKind::Goods)
    fail(Error::Code::KindMismatch, "target search is defined for goods instances");
  if (static_cast<int>(targets.size()) != inst.num_agents())
    fail(Error::Code::InvalidInstance, "one target per agent required");
  check_dp_size(inst);
  return targets_feasible(inst, targets);
}

namespace {

bool dominated_within_all(const Instance& inst, const std::vector<Value>& base) {
  for (int j = 0; j < inst.num_agents(); ++j) {
    std::vector<Value> targets = base;
    targets[j] += 1;
    if (targets_feasible(inst, targets)) return true;
  }
  return false;
}

bool dominated_within_sigma_eq1(const Instance& inst, const Allocation& alloc,
                                const std::vector<Value>& base, const EnumerationBudget& budget,
                                ExecMode mode) {
  const Ordering& sigma = alloc.order;
  const long long total = count_compositions(inst.num_goods(), inst.num_agents());
  check_budget(total, budget);

  auto dominates = [&](const std::vector<Value>& p) {
    bool strict = false;
    for (int i = 0; i < inst.num_agents(); ++i) {
      if (p[i] < base[i]) return false;
      if (p[i] > base[i]) strict = true;
    }
    return strict;
  };

  if (mode == ExecMode::Serial) {
    bool found = false;
    sweep_profiles_serial(inst, sigma,
                          [&](long long, const std::vector<int>& sizes, const std::vector<Value>& p) {
                            if (dominates(p) &&
                                metrics::is_eq1(inst, allocation_from_sizes(sigma, sizes))) {
                              found = true;
                              return false;
                            }
                            return true;
                          });
    return found;
  }

  const int chunks = thread_chunks(total);
  std::vector<char> hit(chunks, 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (int c = 0; c < chunks; ++c) {
    long long begin = total * c / chunks;
    long long end = total * (c + 1) / chunks;
    if (begin >= end) continue;
    std::vector<int> sizes = unrank_composition(begin, inst.num_goods(), inst.num_agents());
    for (long long idx = begin; idx < end; ++idx) {
      std::vector<Value> p = profile_of(inst, sigma, sizes);
      if (dominates(p) && metrics::is_eq1(inst, allocation_from_sizes(sigma, sizes))) {
        hit[c] = 1;
        break;
      }
      next_composition(sizes);
    }
  }
  return std::any_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

}  // namespace

bool pareto_undominated(const Instance& inst, const Allocation& alloc, DominationScope scope,
                        const EnumerationBudget& budget, ExecMode mode) {
  if (inst.kind() != ItemKind::Goods)
    fail(Error::Code::KindMismatch, "Pareto checks are defined for goods instances");
  std::vector<Value> base = metrics::utility_profile(inst, alloc);
  if (scope == DominationScope::All) {
    check_dp_size(inst);
    return !dominated_within_all(inst, base);
  }
  return !dominated_within_sigma_eq1(inst, alloc, base, budget, mode);
}

namespace {

// Backwards replay over the reach table; emits the blocks right to left.
bool targets_reconstruct(const Instance& inst, const std::vector<std::uint64_t>& reach,
                         const std::vector<Value>& targets, std::uint64_t mask, int pos,
                         std::vector<std::pair<int, Interval>>& blocks) {
  if (pos == 0) return mask == 0;
  for (int a = 0; a < inst.num_agents(); ++a) {
    if (!(mask & (1ULL << a))) continue;
    for (int start = pos; start >= 1; --start) {
      if (inst.value(a, Interval{start, pos}) < targets[a]) continue;
      std::uint64_t prev = mask ^ (1ULL << a);
      if ((reach[prev] >> (start - 1)) & 1) {
        blocks.push_back({a, Interval{start, pos}});
        if (targets_reconstruct(inst, reach, targets, prev, start - 1, blocks)) return true;
        blocks.pop_back();
      }
    }
  }
  return false;
}

std::optional<Allocation> targets_witness(const Instance& inst, const std::vector<Value>& targets) {
  const int m = inst.num_goods();
  const int n = inst.num_agents();
  if (!targets_feasible(inst, targets)) return std::nullopt;

  // Rebuild the reach table, then walk it backwards from a covering mask.
  std::vector<std::uint64_t> reach(std::size_t{1} << n, 0);
  reach[0] = 1;
  const std::uint64_t full = (m + 1 >= 64) ? ~0ULL : ((std::uint64_t{1} << (m + 1)) - 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint64_t from = reach[mask];
    if (!from) continue;
    for (int a = 0; a < n; ++a) {
      if (mask & (1ULL << a)) continue;
      std::uint64_t next = 0;
      std::uint64_t bits = from & ~(std::uint64_t{1} << m);
      while (bits) {
        int pos = std::countr_zero(bits);
        bits &= bits - 1;
        int e = pos + 1;
        while (e <= m && inst.value(a, Interval{pos + 1, e}) < targets[a]) ++e;
        if (e <= m) next |= full & ~((std::uint64_t{1} << e) - 1);
      }
      if (next) reach[mask | (1ULL << a)] |= next;
    }
  }

  std::uint64_t skippable = 0;
  for (int a = 0; a < n; ++a)
    if (targets[a] <= 0) skippable |= 1ULL << a;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!((reach[mask] >> m) & 1)) continue;
    if ((~mask & ((std::uint64_t{1} << n) - 1) & ~skippable) != 0) continue;
    std::vector<std::pair<int, Interval>> blocks;
    if (!targets_reconstruct(inst, reach, targets, mask, m, blocks)) continue;
    std::reverse(blocks.begin(), blocks.end());
    Allocation out;
    out.bundles.assign(n, std::nullopt);
    for (const auto& [agent, iv] : blocks) {
      out.order.agents.push_back(agent);
      out.bundles[agent] = iv;
    }
    for (int a = 0; a < n; ++a)
      if (!out.bundles[a]) out.order.agents.push_back(a);
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Allocation> find_dominating(const Instance& inst, const Allocation& alloc,
                                          DominationScope scope, const EnumerationBudget& budget) {
  if (inst.kind() != ItemKind::Goods)
    fail(Error::Code::KindMismatch, "Pareto checks are defined for goods instances");
  std::vector<Value> base = metrics::utility_profile(inst, alloc);

  if (scope == DominationScope::All) {
    check_dp_size(inst);
    for (int j = 0; j < inst.num_agents(); ++j) {
      std::vector<Value> targets = base;
      targets[j] += 1;
      if (auto witness = targets_witness(inst, targets)) return witness;
    }
    return std::nullopt;
  }

  const Ordering& sigma = alloc.order;
  check_budget(count_compositions(inst.num_goods(), inst.num_agents()), budget);
  std::optional<Allocation> found;
  sweep_profiles_serial(inst, sigma,
                        [&](long long, const std::vector<int>& sizes, const std::vector<Value>& p) {
                          bool ge = true, strict = false;
                          for (int i = 0; i < inst.num_agents(); ++i) {
                            ge = ge && p[i] >= base[i];
                            strict = strict || p[i] > base[i];
                          }
                          if (!ge || !strict) return true;
                          Allocation candidate = allocation_from_sizes(sigma, sizes);
                          if (!metrics::is_eq1(inst, candidate)) return true;
                          found = std::move(candidate);
                          return false;
                        });
  return found;
}

namespace {

// Longest run of goods starting at `from` that agent a approves.
int approved_run_end(const Instance& inst, int a, int from) {
  int e = from;
  while (e <= inst.num_goods() && inst.single(a, e) > 0) ++e;
  return e - 1;
}

bool nw_reconstruct(const Instance& inst, const std::vector<std::uint64_t>& reach,
                    std::uint64_t mask, int pos, std::vector<std::pair<int, Interval>>& blocks) {
  if (pos == 0) return mask == 0;
  for (int a = 0; a < inst.num_agents(); ++a) {
    if (!(mask & (1ULL << a))) continue;
    if (inst.single(a, pos) <= 0) continue;
    for (int start = pos; start >= 1 && inst.single(a, start) > 0; --start) {
      std::uint64_t prev = mask ^ (1ULL << a);
      if ((reach[prev] >> (start - 1)) & 1) {
        blocks.push_back({a, Interval{start, pos}});
        if (nw_reconstruct(inst, reach, prev, start - 1, blocks)) return true;
        blocks.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

std::optional<Allocation> find_nw_witness(const Instance& inst) {
  if (inst.kind() != ItemKind::Goods)
    fail(Error::Code::KindMismatch, "non-wasteful search is defined for goods instances");
  check_dp_size(inst);
  const int m = inst.num_goods();
  const int n = inst.num_agents();

  std::vector<std::uint64_t> reach(std::size_t{1} << n, 0);
  reach[0] = 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint64_t from = reach[mask];
    if (!from) continue;
    for (int a = 0; a < n; ++a) {
      if (mask & (1ULL << a)) continue;
      std::uint64_t next = 0;
      std::uint64_t bits = from & ~(~0ULL << m);  // blocks can only start before the end
      while (bits) {
        int pos = std::countr_zero(bits);
        bits &= bits - 1;
        int run_end = approved_run_end(inst, a, pos + 1);
        for (int e = pos + 1; e <= run_end; ++e) next |= std::uint64_t{1} << e;
      }
      if (next) reach[mask | (1ULL << a)] |= next;
    }
  }

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!((reach[mask] >> m) & 1)) continue;
    std::vector<std::pair<int, Interval>> blocks;
    if (!nw_reconstruct(inst, reach, mask, m, blocks)) continue;
    std::reverse(blocks.begin(), blocks.end());
    Allocation a;
    a.bundles.assign(n, std::nullopt);
    for (const auto& [agent, iv] : blocks) {
      a.order.agents.push_back(agent);
      a.bundles[agent] = iv;
    }
    for (int i = 0; i < n; ++i)
      if (!a.bundles[i]) a.order.agents.push_back(i);
    return a;
  }
  return std::nullopt;
}

}  // namespace eqpath::oracle

namespace eqpath::metrics {

bool is_po(const Instance& inst, const Allocation& alloc) {
  return oracle::pareto_undominated(inst, alloc, oracle::DominationScope::All);
}

}  // namespace eqpath::metrics
