#include "eqpath/reductions.hpp"

#include <algorithm>
#include <sstream>

#include "eqpath/metrics.hpp"

namespace eqpath::reductions {

namespace {

constexpr std::array<char, 4> kKindChar = {'p', 'r', 'q', 's'};

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

int canonical_rank(const ShadowVar& v, int) {
  return (v.index - 1) * 4 + static_cast<int>(v.kind);
}

std::string shadow_name(const ShadowVar& v) {
  return std::string(1, kKindChar[static_cast<int>(v.kind)]) + std::to_string(v.index);
}

int LnesInstance::clause_of(const ShadowVar& v) const {
  for (int j = 0; j < p; ++j)
    for (const ShadowVar& y : aux_clauses[j])
      if (y == v) return j + 1;
  fail(Error::Code::StructureViolation, "shadow variable " + shadow_name(v) + " is in no auxiliary clause");
}

LnesInstance validate_lnes(int p, const std::vector<std::vector<ShadowVar>>& aux_clauses) {
  if (p < 1) fail(Error::Code::StructureViolation, "p must be at least 1");
  if (static_cast<int>(aux_clauses.size()) != p)
    fail(Error::Code::StructureViolation, "there must be exactly p auxiliary clauses");
  std::vector<int> seen(4 * p, 0);
  LnesInstance inst;
  inst.p = p;
  for (const auto& clause : aux_clauses) {
    if (clause.size() != 4)
      fail(Error::Code::StructureViolation, "every auxiliary clause must contain exactly four literals");
    std::array<ShadowVar, 4> fixed;
    for (int t = 0; t < 4; ++t) {
      const ShadowVar& v = clause[t];
      if (v.index < 1 || v.index > p)
        fail(Error::Code::StructureViolation,
             "shadow variable " + shadow_name(v) + " has an index outside [1, p]");
      if (seen[canonical_rank(v, p)]++)
        fail(Error::Code::StructureViolation,
             "shadow variable " + shadow_name(v) + " occurs in more than one auxiliary clause");
      fixed[t] = v;
    }
    inst.aux_clauses.push_back(fixed);
  }
  // seen[] now counts each variable once; the partition property follows.
  return inst;
}

namespace {

ShadowVar parse_shadow_token(const std::string& token) {
  if (token.empty()) fail(Error::Code::ParseError, "empty token in auxiliary clause");
  if (token[0] == 'x')
    fail(Error::Code::StructureViolation, "main variables cannot occur in auxiliary clauses");
  int kind = -1;
  for (int k = 0; k < 4; ++k)
    if (token[0] == kKindChar[k]) kind = k;
  if (kind < 0 || token.size() < 2)
    fail(Error::Code::ParseError, "cannot parse shadow variable '" + token + "'");
  int index = 0;
  for (std::size_t t = 1; t < token.size(); ++t) {
    if (!isdigit(static_cast<unsigned char>(token[t])))
      fail(Error::Code::ParseError, "cannot parse shadow variable '" + token + "'");
    index = index * 10 + (token[t] - '0');
  }
  return {static_cast<ShadowKind>(kind), index};
}

}  // namespace

LnesInstance parse_lnes(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int p = -1;
  std::vector<std::vector<ShadowVar>> clauses;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string token;
    std::vector<std::string> tokens;
    while (row >> token) {
      if (token[0] == '#') break;
      tokens.push_back(token);
    }
    if (tokens.empty()) continue;
    if (p < 0) {
      if (tokens.size() != 2 || tokens[0] != "p")
        fail(Error::Code::ParseError, "expected header 'p <count>'");
      try {
        p = std::stoi(tokens[1]);
      } catch (const std::exception&) {
        fail(Error::Code::ParseError, "expected header 'p <count>'");
      }
      continue;
    }
    std::vector<ShadowVar> clause;
    for (const std::string& t : tokens) clause.push_back(parse_shadow_token(t));
    clauses.push_back(std::move(clause));
  }
  if (p < 0) fail(Error::Code::ParseError, "missing 'p <count>' header");
  return validate_lnes(p, clauses);
}

std::string serialize_lnes(const LnesInstance& inst) {
  std::ostringstream out;
  out << "p " << inst.p << "\n";
  for (const auto& clause : inst.aux_clauses) {
    for (int t = 0; t < 4; ++t) out << (t ? " " : "") << shadow_name(clause[t]);
    out << "\n";
  }
  return out.str();
}

LnesAssignment parse_assignment(const std::string& text, const LnesInstance& inst) {
  LnesAssignment tau;
  tau.main.assign(inst.p, false);
  for (auto& side : tau.shadow) side.assign(inst.p, false);
  std::vector<int> seen_main(inst.p, 0);
  std::array<std::vector<int>, 4> seen_shadow;
  for (auto& side : seen_shadow) side.assign(inst.p, 0);

  std::istringstream in(text);
  std::string name;
  int value = 0;
  while (in >> name) {
    if (name[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (!(in >> value) || (value != 0 && value != 1))
      fail(Error::Code::ParseError, "assignment entries must be '<var> 0|1'");
    if (name[0] == 'x') {
      int index = 0;
      try {
        index = std::stoi(name.substr(1));
      } catch (const std::exception&) {
        fail(Error::Code::ParseError, "cannot parse variable '" + name + "'");
      }
      if (index < 1 || index > inst.p)
        fail(Error::Code::ParseError, "main variable " + name + " out of range");
      tau.main[index - 1] = value == 1;
      seen_main[index - 1] += 1;
    } else {
      ShadowVar v = parse_shadow_token(name);
      if (v.index < 1 || v.index > inst.p)
        fail(Error::Code::ParseError, "shadow variable " + name + " out of range");
      tau.shadow[static_cast<int>(v.kind)][v.index - 1] = value == 1;
      seen_shadow[static_cast<int>(v.kind)][v.index - 1] += 1;
    }
  }
  for (int i = 0; i < inst.p; ++i) {
    if (seen_main[i] != 1)
      fail(Error::Code::ParseError, "main variable x" + std::to_string(i + 1) +
                                        " must be assigned exactly once");
    for (int k = 0; k < 4; ++k)
      if (seen_shadow[k][i] != 1)
        fail(Error::Code::ParseError,
             "shadow variable " + shadow_name({static_cast<ShadowKind>(k), i + 1}) +
                 " must be assigned exactly once");
  }
  return tau;
}

bool check_assignment(const LnesInstance& inst, const LnesAssignment& tau) {
  if (static_cast<int>(tau.main.size()) != inst.p) return false;
  for (const auto& side : tau.shadow)
    if (static_cast<int>(side.size()) != inst.p) return false;
  for (int i = 0; i < inst.p; ++i) {
    const bool x = tau.main[i];
    // Core clauses, each two literals: exactly one true.
    const bool p_neg = !tau.shadow[0][i], r_neg = !tau.shadow[1][i];
    const bool q_neg = !tau.shadow[2][i], s_neg = !tau.shadow[3][i];
    if (static_cast<int>(p_neg) + static_cast<int>(x) != 1) return false;
    if (static_cast<int>(r_neg) + static_cast<int>(x) != 1) return false;
    if (static_cast<int>(q_neg) + static_cast<int>(!x) != 1) return false;
    if (static_cast<int>(s_neg) + static_cast<int>(!x) != 1) return false;
  }
  for (const auto& clause : inst.aux_clauses) {
    int true_count = 0;
    for (const ShadowVar& v : clause) true_count += tau.shadow_value(v) ? 1 : 0;
    if (true_count != 2) return false;
  }
  return true;
}

std::optional<LnesAssignment> solve_lnes(const LnesInstance& inst) {
  // Core clauses force p_i = r_i = x_i and q_i = s_i = !x_i, so only the main
  // variables are free.
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << inst.p); ++bits) {
    LnesAssignment tau;
    tau.main.assign(inst.p, false);
    for (auto& side : tau.shadow) side.assign(inst.p, false);
    for (int i = 0; i < inst.p; ++i) {
      const bool x = (bits >> i) & 1;
      tau.main[i] = x;
      tau.shadow[0][i] = x;
      tau.shadow[1][i] = x;
      tau.shadow[2][i] = !x;
      tau.shadow[3][i] = !x;
    }
    if (check_assignment(inst, tau)) return tau;
  }
  return std::nullopt;
}

LnesInstance random_lnes(int p, std::uint64_t seed) {
  std::uint64_t state = seed * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<ShadowVar> vars;
    for (int i = 1; i <= p; ++i)
      for (int k = 0; k < 4; ++k) vars.push_back({static_cast<ShadowKind>(k), i});
    for (std::size_t t = vars.size(); t > 1; --t)
      std::swap(vars[t - 1], vars[splitmix64(state) % t]);
    std::vector<std::vector<ShadowVar>> clauses(p);
    for (int j = 0; j < p; ++j)
      clauses[j].assign(vars.begin() + 4 * j, vars.begin() + 4 * (j + 1));
    LnesInstance inst = validate_lnes(p, clauses);
    if (solve_lnes(inst)) return inst;
  }
  throw std::logic_error("could not draw a satisfiable formula");
}

namespace {

struct GoodTable {
  std::vector<std::string> labels;
  int add(const std::string& label) {
    labels.push_back(label);
    return static_cast<int>(labels.size());  // 1-based position
  }
};

std::vector<Value> approvals_to_values(int m, const std::vector<int>& goods) {
  std::vector<Value> values(m, 0);
  for (int g : goods) values[g - 1] = 1;
  return values;
}

Gadget assemble(GadgetKind kind, const LnesInstance& lnes, GoodTable goods, Layout layout,
                std::vector<std::pair<std::string, std::vector<int>>> agent_approvals) {
  const int m = static_cast<int>(goods.labels.size());
  std::vector<Agent> agents;
  agents.reserve(agent_approvals.size());
  for (auto& [name, approved] : agent_approvals)
    agents.push_back({name, Valuation::additive(approvals_to_values(m, approved))});
  layout.kind = kind;
  layout.p = lnes.p;
  layout.good_labels = std::move(goods.labels);
  return {Instance(ItemKind::Goods, m, std::move(agents)), std::move(layout)};
}

}  // namespace

Gadget build_nw_instance(const LnesInstance& lnes) {
  const int p = lnes.p;
  GoodTable goods;
  Layout layout;
  layout.core_goods.resize(p);
  layout.aux_goods.resize(p);
  layout.dummy_goods.resize(p);

  for (int i = 1; i <= p; ++i) {
    layout.core_goods[i - 1][0] = goods.add("U" + std::to_string(i));
    layout.core_goods[i - 1][1] = goods.add("V" + std::to_string(i));
    layout.core_goods[i - 1][2] = goods.add("U" + std::to_string(i) + "'");
    layout.core_goods[i - 1][3] = goods.add("V" + std::to_string(i) + "'");
  }
  layout.separator_goods.push_back({goods.add("S0")});
  for (int j = 1; j <= p; ++j) {
    int left = goods.add("C" + std::to_string(j) + "L");
    layout.separator_goods.push_back({goods.add("S" + std::to_string(j))});
    int right = goods.add("C" + std::to_string(j) + "R");
    layout.aux_goods[j - 1] = {left, right};
  }
  for (int i = 1; i <= p; ++i) {
    layout.dummy_goods[i - 1] = {goods.add("D" + std::to_string(i)),
                                 goods.add("D" + std::to_string(i) + "'")};
  }

  std::vector<std::pair<std::string, std::vector<int>>> agents;
  for (int i = 1; i <= p; ++i) {
    layout.main_pos_agent.push_back(static_cast<int>(agents.size()));
    agents.push_back({"x" + std::to_string(i),
                      {layout.core_goods[i - 1][0], layout.core_goods[i - 1][1],
                       layout.dummy_goods[i - 1][0], layout.dummy_goods[i - 1][1]}});
    layout.main_neg_agent.push_back(static_cast<int>(agents.size()));
    agents.push_back({"nx" + std::to_string(i),
                      {layout.core_goods[i - 1][2], layout.core_goods[i - 1][3],
                       layout.dummy_goods[i - 1][0], layout.dummy_goods[i - 1][1]}});
  }
  for (int i = 1; i <= p; ++i) {
    for (int k = 0; k < 4; ++k) {
      ShadowVar v{static_cast<ShadowKind>(k), i};
      const auto& aux = layout.aux_goods[lnes.clause_of(v) - 1];
      layout.shadow_agent[k].push_back(static_cast<int>(agents.size()));
      agents.push_back({shadow_name(v), {layout.core_goods[i - 1][k], aux[0], aux[1]}});
    }
  }
  for (int j = 0; j <= p; ++j) {
    layout.separator_agents.push_back(static_cast<int>(agents.size()));
    agents.push_back({"t" + std::to_string(j), layout.separator_goods[j]});
  }
  return assemble(GadgetKind::Nw, lnes, std::move(goods), std::move(layout), std::move(agents));
}

namespace {

// Core-and-shadow row shared by the Eq1Po and Ef1Po gadgets: for each i the
// goods U_i, p_i^1, p_i^2, r_i^1, r_i^2, V_i, U_i', q_i^1, q_i^2, s_i^1,
// s_i^2, V_i'.
void add_core_shadow_row(int p, GoodTable& goods, Layout& layout) {
  layout.core_goods.resize(p);
  layout.shadow_goods.resize(4 * p);
  for (int i = 1; i <= p; ++i) {
    auto shadow_pair = [&](ShadowKind kind) {
      ShadowVar v{kind, i};
      int a = goods.add(shadow_name(v) + "_1");
      int b = goods.add(shadow_name(v) + "_2");
      layout.shadow_goods[canonical_rank(v, p)] = {a, b};
    };
    layout.core_goods[i - 1][0] = goods.add("U" + std::to_string(i));
    shadow_pair(ShadowKind::P);
    shadow_pair(ShadowKind::R);
    layout.core_goods[i - 1][1] = goods.add("V" + std::to_string(i));
    layout.core_goods[i - 1][2] = goods.add("U" + std::to_string(i) + "'");
    shadow_pair(ShadowKind::Q);
    shadow_pair(ShadowKind::S);
    layout.core_goods[i - 1][3] = goods.add("V" + std::to_string(i) + "'");
  }
}

std::vector<std::pair<std::string, std::vector<int>>> main_and_shadow_agents(
    const LnesInstance& lnes, Layout& layout, const std::vector<std::vector<int>>& main_extra) {
  const int p = lnes.p;
  std::vector<std::pair<std::string, std::vector<int>>> agents;
  for (int i = 1; i <= p; ++i) {
    std::vector<int> pos = {layout.core_goods[i - 1][0], layout.core_goods[i - 1][1]};
    std::vector<int> neg = {layout.core_goods[i - 1][2], layout.core_goods[i - 1][3]};
    for (int g : main_extra[i - 1]) {
      pos.push_back(g);
      neg.push_back(g);
    }
    layout.main_pos_agent.push_back(static_cast<int>(agents.size()));
    agents.push_back({"x" + std::to_string(i), pos});
    layout.main_neg_agent.push_back(static_cast<int>(agents.size()));
    agents.push_back({"nx" + std::to_string(i), neg});
  }
  for (int i = 1; i <= p; ++i) {
    for (int k = 0; k < 4; ++k) {
      ShadowVar v{static_cast<ShadowKind>(k), i};
      const auto& pair = layout.shadow_goods[canonical_rank(v, p)];
      std::vector<int> approved = {pair[0], pair[1]};
      for (int g : layout.aux_goods[lnes.clause_of(v) - 1]) approved.push_back(g);
      layout.shadow_agent[k].push_back(static_cast<int>(agents.size()));
      agents.push_back({shadow_name(v), approved});
    }
  }
  return agents;
}

}  // namespace

Gadget build_eq1_po_instance(const LnesInstance& lnes) {
  const int p = lnes.p;
  GoodTable goods;
  Layout layout;
  layout.aux_goods.resize(p);
  layout.dummy_goods.resize(p);

  add_core_shadow_row(p, goods, layout);
  layout.separator_goods.push_back({goods.add("S0_1"), goods.add("S0_2")});
  for (int j = 1; j <= p; ++j) {
    int l1 = goods.add("C" + std::to_string(j) + "L1");
    int l2 = goods.add("C" + std::to_string(j) + "L2");
    layout.separator_goods.push_back(
        {goods.add("S" + std::to_string(j) + "_1"), goods.add("S" + std::to_string(j) + "_2")});
    int r1 = goods.add("C" + std::to_string(j) + "R1");
    int r2 = goods.add("C" + std::to_string(j) + "R2");
    layout.aux_goods[j - 1] = {l1, l2, r1, r2};
  }
  for (int i = 1; i <= p; ++i)
    layout.dummy_goods[i - 1] = {goods.add("D" + std::to_string(i)),
                                 goods.add("D" + std::to_string(i) + "'")};
  layout.special_goods = {goods.add("SP1"), goods.add("SP2"), goods.add("SP3")};

  auto agents = main_and_shadow_agents(lnes, layout, layout.dummy_goods);
  for (int j = 0; j <= p; ++j) {
    layout.separator_agents.push_back(static_cast<int>(agents.size()));
    agents.push_back({"t" + std::to_string(j), layout.separator_goods[j]});
  }
  layout.special_agent = static_cast<int>(agents.size());
  agents.push_back({"as", layout.special_goods});
  return assemble(GadgetKind::Eq1Po, lnes, std::move(goods), std::move(layout), std::move(agents));
}

Gadget build_ef1_po_instance(const LnesInstance& lnes, bool doubled_aux) {
  const int p = lnes.p;
  GoodTable goods;
  Layout layout;
  layout.aux_goods.resize(p);
  layout.dummy_goods.resize(p);

  add_core_shadow_row(p, goods, layout);
  layout.separator_goods.push_back({goods.add("S1"), goods.add("S2")});
  for (int j = 1; j <= p; ++j) {
    if (doubled_aux) {
      layout.aux_goods[j - 1] = {
          goods.add("C" + std::to_string(j) + "L1"), goods.add("C" + std::to_string(j) + "L2"),
          goods.add("C" + std::to_string(j) + "R1"), goods.add("C" + std::to_string(j) + "R2")};
    } else {
      layout.aux_goods[j - 1] = {goods.add("C" + std::to_string(j) + "L"),
                                 goods.add("C" + std::to_string(j) + "R")};
    }
  }
  for (int i = 1; i <= p; ++i)
    layout.dummy_goods[i - 1] = {goods.add("D" + std::to_string(i) + "_1"),
                                 goods.add("D" + std::to_string(i) + "_2"),
                                 goods.add("D" + std::to_string(i) + "_3")};

  auto agents = main_and_shadow_agents(lnes, layout, layout.dummy_goods);
  layout.separator_agents.push_back(static_cast<int>(agents.size()));
  agents.push_back({"a0", layout.separator_goods[0]});
  return assemble(doubled_aux ? GadgetKind::Ef1PoD : GadgetKind::Ef1Po, lnes, std::move(goods),
                  std::move(layout), std::move(agents));
}

namespace {

Interval span(int a, int b) { return Interval{std::min(a, b), std::max(a, b)}; }

// The two shadow agents whose variables satisfy auxiliary clause j, in
// canonical variable order.
std::array<ShadowVar, 2> true_pair(const LnesInstance& lnes, const LnesAssignment& tau, int j) {
  std::array<ShadowVar, 2> out{};
  int found = 0;
  std::vector<ShadowVar> sorted(lnes.aux_clauses[j - 1].begin(), lnes.aux_clauses[j - 1].end());
  std::sort(sorted.begin(), sorted.end(), [&](const ShadowVar& a, const ShadowVar& b) {
    return canonical_rank(a, lnes.p) < canonical_rank(b, lnes.p);
  });
  for (const ShadowVar& v : sorted)
    if (tau.shadow_value(v)) {
      if (found < 2) out[found] = v;
      ++found;
    }
  if (found != 2) throw std::logic_error("a satisfied auxiliary clause has exactly two true literals");
  return out;
}

int shadow_agent_of(const Layout& layout, const ShadowVar& v) {
  return layout.shadow_agent[static_cast<int>(v.kind)][v.index - 1];
}

}  // namespace

Allocation forward_map(const Gadget& gadget, const LnesInstance& lnes, const LnesAssignment& tau) {
  if (!check_assignment(lnes, tau))
    fail(Error::Code::NotSatisfying, "the assignment does not satisfy the formula");
  const Layout& layout = gadget.layout;
  const int p = lnes.p;
  const int n = gadget.instance.num_agents();

  Allocation alloc;
  alloc.bundles.assign(n, std::nullopt);

  for (int i = 1; i <= p; ++i) {
    const auto& core = layout.core_goods[i - 1];
    const auto& dummies = layout.dummy_goods[i - 1];
    const Interval dummy_block = span(dummies.front(), dummies.back());
    if (gadget.layout.kind == GadgetKind::Nw) {
      if (tau.main[i - 1]) {
        alloc.bundles[layout.main_pos_agent[i - 1]] = span(core[0], core[1]);
        alloc.bundles[layout.main_neg_agent[i - 1]] = dummy_block;
        alloc.bundles[shadow_agent_of(layout, {ShadowKind::Q, i})] = span(core[2], core[2]);
        alloc.bundles[shadow_agent_of(layout, {ShadowKind::S, i})] = span(core[3], core[3]);
      } else {
        alloc.bundles[layout.main_neg_agent[i - 1]] = span(core[2], core[3]);
        alloc.bundles[layout.main_pos_agent[i - 1]] = dummy_block;
        alloc.bundles[shadow_agent_of(layout, {ShadowKind::P, i})] = span(core[0], core[0]);
        alloc.bundles[shadow_agent_of(layout, {ShadowKind::R, i})] = span(core[1], core[1]);
      }
    } else {
      // Core-and-shadow row: the lucky main agent takes the whole six-good
      // stretch of its literal; the false-variable shadow agents take their
      // shadow pair plus the adjacent core good.
      const auto& q_pair = layout.shadow_goods[canonical_rank({ShadowKind::Q, i}, p)];
      const auto& s_pair = layout.shadow_goods[canonical_rank({ShadowKind::S, i}, p)];
      const auto& p_pair = layout.shadow_goods[canonical_rank({ShadowKind::P, i}, p)];
      const auto& r_pair = layout.shadow_goods[canonical_rank({ShadowKind::R, i}, p)];
      if (tau.main[i - 1]) {
        alloc.bundles[layout.main_pos_agent[i - 1]] = span(core[0], core[1]);
        alloc.bundles[layout.main_neg_agent[i - 1]] = dummy_block;
        alloc.bundles[shadow_agent_of(layout, {ShadowKind::Q, i})] = span(core[2], q_pair[1]);
        alloc.bundles[shadow_agent_of(layout, {ShadowKind::S, i})] = span(s_pair[0], core[3]);
      } else {
        alloc.bundles[layout.main_neg_agent[i - 1]] = span(core[2], core[3]);
        alloc.bundles[layout.main_pos_agent[i - 1]] = dummy_block;
        alloc.bundles[shadow_agent_of(layout, {ShadowKind::P, i})] = span(core[0], p_pair[1]);
        alloc.bundles[shadow_agent_of(layout, {ShadowKind::R, i})] = span(r_pair[0], core[1]);
      }
    }
  }

  for (int j = 1; j <= p; ++j) {
    const auto pair = true_pair(lnes, tau, j);
    const auto& aux = layout.aux_goods[j - 1];
    const int half = static_cast<int>(aux.size()) / 2;
    alloc.bundles[shadow_agent_of(layout, pair[0])] = span(aux.front(), aux[half - 1]);
    alloc.bundles[shadow_agent_of(layout, pair[1])] = span(aux[half], aux.back());
  }

  for (std::size_t t = 0; t < layout.separator_agents.size(); ++t) {
    const auto& seps = layout.separator_goods[t];
    alloc.bundles[layout.separator_agents[t]] = span(seps.front(), seps.back());
  }
  if (layout.special_agent >= 0)
    alloc.bundles[layout.special_agent] =
        span(layout.special_goods.front(), layout.special_goods.back());

  // Left-to-right ordering of the nonempty bundles.
  std::vector<int> order;
  for (int a = 0; a < n; ++a)
    if (alloc.bundles[a]) order.push_back(a);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return alloc.bundles[a]->lo < alloc.bundles[b]->lo; });
  for (int a = 0; a < n; ++a)
    if (!alloc.bundles[a]) order.push_back(a);
  alloc.order.agents = std::move(order);
  return alloc;
}

LnesAssignment reverse_map_nw(const Gadget& gadget, const LnesInstance& lnes,
                              const Allocation& alloc) {
  const Layout& layout = gadget.layout;
  if (layout.kind != GadgetKind::Nw)
    fail(Error::Code::MalformedLayout, "the reverse map operates on the non-wastefulness gadget");
  if (static_cast<int>(alloc.bundles.size()) != gadget.instance.num_agents())
    fail(Error::Code::MalformedLayout, "allocation does not match the gadget's agents");
  if (!metrics::is_nw(gadget.instance, alloc))
    fail(Error::Code::NotNonWasteful, "the allocation is not non-wasteful");

  const int p = lnes.p;
  LnesAssignment tau;
  tau.main.assign(p, false);
  for (auto& side : tau.shadow) side.assign(p, false);

  auto holds = [&](int agent, int good) {
    const Bundle& b = alloc.bundles[agent];
    return b && b->contains(good);
  };

  for (int i = 1; i <= p; ++i) {
    const auto& dummies = layout.dummy_goods[i - 1];
    const bool pos_unlucky =
        holds(layout.main_pos_agent[i - 1], dummies[0]) || holds(layout.main_pos_agent[i - 1], dummies[1]);
    const bool neg_unlucky =
        holds(layout.main_neg_agent[i - 1], dummies[0]) || holds(layout.main_neg_agent[i - 1], dummies[1]);
    if (pos_unlucky == neg_unlucky)
      fail(Error::Code::MalformedLayout, "exactly one main agent per variable holds the dummy pair");
    tau.main[i - 1] = pos_unlucky ? false : true;
  }
  for (int i = 1; i <= p; ++i) {
    for (int k = 0; k < 4; ++k) {
      ShadowVar v{static_cast<ShadowKind>(k), i};
      const int agent = shadow_agent_of(layout, v);
      const auto& aux = layout.aux_goods[lnes.clause_of(v) - 1];
      if (holds(agent, layout.core_goods[i - 1][k]))
        tau.shadow[k][i - 1] = false;
      else if (holds(agent, aux[0]) || holds(agent, aux[1]))
        tau.shadow[k][i - 1] = true;
      else
        fail(Error::Code::MalformedLayout,
             "shadow agent " + shadow_name(v) + " holds neither its core good nor an auxiliary good");
    }
  }
  if (!check_assignment(lnes, tau))
    fail(Error::Code::MalformedLayout, "recovered assignment does not satisfy the formula");
  return tau;
}

Instance to_chores(const Instance& inst) {
  if (!inst.is_binary()) fail(Error::Code::NotBinary, "the chores transformation expects binary values");
  std::vector<Agent> agents;
  agents.reserve(inst.num_agents());
  for (const Agent& a : inst.agents()) {
    std::vector<Value> values = a.valuation.per_good_values();
    for (Value& x : values) x -= 1;
    agents.push_back({a.name, Valuation::additive(std::move(values))});
  }
  return Instance(ItemKind::Chores, inst.num_goods(), std::move(agents));
}

}  // namespace eqpath::reductions
