#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqpath {

using Value = long long;

enum class ItemKind { Goods, Chores };

/// Single error type for the whole library; the code tells callers (and the
/// CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  enum class Code {
    InvalidInstance,
    InvalidInterval,
    UnknownAgent,
    InvalidAlpha,
    KindMismatch,
    NotBinary,
    NotExtremal,
    BudgetExceeded,
    InstanceTooLarge,
    StructureViolation,
    NotSatisfying,
    NotNonWasteful,
    MalformedLayout,
    ParseError,
  };

  Error(Code code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

[[noreturn]] void fail(Error::Code code, const std::string& msg);

/// Contiguous run of goods [lo, hi], 1-based inclusive.
struct Interval {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo + 1; }
  bool contains(int good) const { return lo <= good && good <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A bundle is empty or one contiguous interval; connectivity is structural.
using Bundle = std::optional<Interval>;

/// Agent valuation: additive per-good values, or a full table with one entry
/// per contiguous interval. Both are exact integers.
class Valuation {
 public:
  static Valuation additive(std::vector<Value> per_good);
  // rows[l-1] holds values for [l,l], [l,l+1], ..., [l,m].
  static Valuation interval_table(int num_goods, std::vector<std::vector<Value>> rows);

  bool is_additive() const { return additive_; }
  int num_goods() const { return m_; }

  Value single(int good) const;          // u({v_good}); table uses [good, good]
  Value interval(const Interval& iv) const;
  Value bundle(const Bundle& b) const { return b ? interval(*b) : 0; }

  const std::vector<Value>& per_good_values() const;  // additive only

 private:
  Valuation() = default;
  std::size_t table_index(int lo, int hi) const;

  bool additive_ = true;
  int m_ = 0;
  std::vector<Value> values_;  // additive: per-good values
  std::vector<Value> prefix_;  // additive: prefix sums, prefix_[j] = sum of v_1..v_j
  std::vector<Value> table_;   // interval table, triangular row-major
};

struct Agent {
  std::string name;
  Valuation valuation;
};

/// Path instance: goods v_1..v_m on a path, agents with goods or chores
/// valuations. Immutable after construction; construction validates kind
/// constraints and table monotonicity.
class Instance {
 public:
  Instance(ItemKind kind, int num_goods, std::vector<Agent> agents);

  ItemKind kind() const { return kind_; }
  int num_goods() const { return m_; }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  const std::vector<Agent>& agents() const { return agents_; }
  const Agent& agent(int index) const;
  int agent_index(const std::string& name) const;  // -1 when absent

  Value value(int agent, const Bundle& bundle) const;  // checks interval range
  Value single(int agent, int good) const;

  bool is_binary() const;    // additive with all entries in {0,1}
  Instance negated() const;  // value sign flip, Goods <-> Chores
  Instance as_interval_table() const;

 private:
  ItemKind kind_;
  int m_;
  std::vector<Agent> agents_;
};

/// Agent ordering sigma: agents[k] is the agent at left-to-right position k.
struct Ordering {
  std::vector<int> agents;

  static Ordering identity(int n);
  int size() const { return static_cast<int>(agents.size()); }
  int at(int pos) const { return agents[pos]; }
  void validate(int n) const;  // must be a permutation of 0..n-1
};

/// Allocation always carries the sigma it claims consistency with; an empty
/// bundle's sigma position is its agent's slot in the ordering.
struct Allocation {
  Ordering order;
  std::vector<Bundle> bundles;  // indexed by agent id
};

struct ValidationReport {
  bool connected = false;
  bool disjoint = false;
  bool sigma_consistent = false;
  bool complete = false;
  bool all() const { return connected && disjoint && sigma_consistent && complete; }
};

ValidationReport validate_allocation(const Instance& inst, const Allocation& alloc);

/// Sorted distinct values u_i([l,r]) over all agents and intervals, plus 0.
struct RealizableUtilityList {
  std::vector<Value> values;  // ascending, distinct, contains 0
  Value u_max = 0;            // max single-good value over all agents

  std::optional<Value> successor(Value v) const;
};

RealizableUtilityList realizable_utilities(const Instance& inst);

Value bundle_value(const Instance& inst, int agent, const Bundle& bundle);

}  // namespace eqpath
