#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqpath/core.hpp"

namespace eqpath::reductions {

/// Shadow variables come in four kinds, one per core-clause family: p_i and
/// r_i appear negated next to x_i, q_i and s_i next to the negated main
/// literal. Canonical order is p_i, r_i, q_i, s_i grouped by index.
enum class ShadowKind { P = 0, R = 1, Q = 2, S = 3 };

struct ShadowVar {
  ShadowKind kind = ShadowKind::P;
  int index = 1;  // 1-based

  friend bool operator==(const ShadowVar&, const ShadowVar&) = default;
};

int canonical_rank(const ShadowVar& v, int p);  // 0..4p-1
std::string shadow_name(const ShadowVar& v);

/// Structured near-exact satisfiability formula: p main variables, 4p shadow
/// variables, 4p two-literal core clauses (implied by the structure) and p
/// four-literal auxiliary clauses partitioning the shadow variables.
struct LnesInstance {
  int p = 0;
  std::vector<std::array<ShadowVar, 4>> aux_clauses;

  int clause_of(const ShadowVar& v) const;  // 1-based clause index
};

/// Checks every structural rule and names the violated one on failure.
LnesInstance validate_lnes(int p, const std::vector<std::vector<ShadowVar>>& aux_clauses);

LnesInstance parse_lnes(const std::string& text);
std::string serialize_lnes(const LnesInstance& inst);

struct LnesAssignment {
  std::vector<bool> main;                   // x_1..x_p
  std::array<std::vector<bool>, 4> shadow;  // [kind][index-1]

  bool shadow_value(const ShadowVar& v) const {
    return shadow[static_cast<int>(v.kind)][v.index - 1];
  }
};

LnesAssignment parse_assignment(const std::string& text, const LnesInstance& inst);

/// Exactly one true literal per core clause and exactly two per auxiliary
/// clause.
bool check_assignment(const LnesInstance& inst, const LnesAssignment& tau);

/// Exhaustive search over main-variable assignments (shadow values are forced
/// by the core clauses); nullopt when the formula is unsatisfiable.
std::optional<LnesAssignment> solve_lnes(const LnesInstance& inst);

/// Random satisfiable formula with the required structure.
LnesInstance random_lnes(int p, std::uint64_t seed);

enum class GadgetKind { Nw, Eq1Po, Ef1Po, Ef1PoD };

/// Good and agent bookkeeping for a compiled gadget; labels mirror the
/// instance diagrams so tests can address positions by role.
struct Layout {
  GadgetKind kind = GadgetKind::Nw;
  int p = 0;
  std::vector<std::string> good_labels;                 // by good, 0-based
  std::vector<std::array<int, 4>> core_goods;           // [i-1][kind]: clause good of p/r/q/s_i
  std::vector<std::vector<int>> aux_goods;              // [j-1]: left-to-right auxiliary goods
  std::vector<std::vector<int>> dummy_goods;            // [i-1]
  std::vector<std::array<int, 2>> shadow_goods;         // by canonical rank (empty for Nw)
  std::vector<std::vector<int>> separator_goods;        // per separator agent
  std::vector<int> special_goods;                       // Eq1Po only
  std::vector<int> main_pos_agent, main_neg_agent;      // [i-1]
  std::array<std::vector<int>, 4> shadow_agent;         // [kind][i-1]
  std::vector<int> separator_agents;
  int special_agent = -1;
};

struct Gadget {
  Instance instance;
  Layout layout;
};

Gadget build_nw_instance(const LnesInstance& inst);
Gadget build_eq1_po_instance(const LnesInstance& inst);
Gadget build_ef1_po_instance(const LnesInstance& inst, bool doubled_aux = false);

/// The allocation prescribed by the relevant forward construction; requires a
/// satisfying assignment.
Allocation forward_map(const Gadget& gadget, const LnesInstance& inst, const LnesAssignment& tau);

/// Recovers a satisfying assignment from any connected non-wasteful
/// allocation of the NW gadget.
LnesAssignment reverse_map_nw(const Gadget& gadget, const LnesInstance& inst,
                              const Allocation& alloc);

/// Binary goods instance with every value decremented by one; values land in
/// {-1, 0} and the kind flips to chores.
Instance to_chores(const Instance& inst);

}  // namespace eqpath::reductions
