#include "eqpath/cli.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "eqpath/core.hpp"
#include "eqpath/egalitarian.hpp"
#include "eqpath/extremal.hpp"
#include "eqpath/gen.hpp"
#include "eqpath/io.hpp"
#include "eqpath/metrics.hpp"
#include "eqpath/oracle.hpp"
#include "eqpath/postar.hpp"
#include "eqpath/reductions.hpp"

namespace eqpath::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitRejected = 2;
constexpr int kExitBudget = 3;
constexpr int kExitParse = 64;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Error::Code::BudgetExceeded:
    case Error::Code::InstanceTooLarge:
      return kExitBudget;
    case Error::Code::KindMismatch:
    case Error::Code::NotBinary:
    case Error::Code::NotExtremal:
    case Error::Code::NotSatisfying:
    case Error::Code::NotNonWasteful:
    case Error::Code::InvalidAlpha:
      return kExitRejected;
    default:
      return kExitParse;
  }
}

oracle::EnumerationBudget budget_from_env() {
  oracle::EnumerationBudget budget;
  if (const char* raw = std::getenv("EQPATH_ORACLE_BUDGET")) {
    try {
      budget.max_states = std::stoll(raw);
    } catch (const std::exception&) {
      fail(Error::Code::ParseError, "EQPATH_ORACLE_BUDGET must be an integer");
    }
  }
  return budget;
}

Ordering parse_order(const std::string& text, const Instance& inst) {
  if (text.empty()) return Ordering::identity(inst.num_agents());
  Ordering order;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    int agent = inst.agent_index(token);
    if (agent < 0) {
      try {
        agent = std::stoi(token) - 1;  // 1-based positions accepted
      } catch (const std::exception&) {
        fail(Error::Code::ParseError, "unknown agent '" + token + "' in --order");
      }
    }
    if (agent < 0 || agent >= inst.num_agents())
      fail(Error::Code::ParseError, "unknown agent '" + token + "' in --order");
    order.agents.push_back(agent);
  }
  try {
    order.validate(inst.num_agents());
  } catch (const Error& e) {
    fail(Error::Code::ParseError, std::string("--order: ") + e.what());
  }
  return order;
}

void print_allocation(std::ostream& out, const Instance& inst, const Allocation& alloc) {
  for (int pos = 0; pos < alloc.order.size(); ++pos) {
    const int agent = alloc.order.at(pos);
    const Bundle& b = alloc.bundles[agent];
    out << "  " << inst.agent(agent).name << " ";
    if (b)
      out << "[" << b->lo << "," << b->hi << "]";
    else
      out << "EMPTY";
    out << "\n";
  }
}

void print_report(std::ostream& out, const metrics::CheckReport& rep) {
  out << "utilities:";
  for (Value u : rep.utilities) out << " " << u;
  out << "\nutilitarian: " << rep.utilitarian << "\negalitarian: " << rep.egalitarian << "\nchecks:";
  for (const auto& [name, pass] : rep.predicates) out << " " << name << "=" << (pass ? "yes" : "no");
  out << "\n";
}

int cmd_solve(const std::string& file, const std::string& alg, const std::string& order_text,
              const std::string& out_file, std::ostream& out) {
  Instance inst = io::parse_instance(io::read_file(file));
  Ordering order = parse_order(order_text, inst);

  std::optional<Allocation> alloc;
  if (alg == "eq1-complete") {
    alloc = egal::eq1_complete(inst, order);
  } else if (alg == "eq1-chores") {
    alloc = egal::eq1_complete_chores(inst, order);
  } else if (alg == "po-star") {
    alloc = postar::po_star(inst, order);
  } else if (alg == "extremal") {
    alloc = extremal::solve_extremal(inst);
    if (!alloc) {
      out << "NO\n";
      return kExitRejected;  // a correct NO answer, still a non-solution
    }
  } else {
    fail(Error::Code::ParseError, "unknown algorithm '" + alg + "'");
  }

  out << "allocation:\n";
  print_allocation(out, inst, *alloc);
  print_report(out, metrics::basic_report(inst, *alloc));
  if (!out_file.empty()) io::write_file(out_file, io::serialize_allocation(inst, *alloc));
  return kExitOk;
}

int cmd_check(const std::string& file, const std::string& alloc_file, const std::string& props,
              std::ostream& out) {
  Instance inst = io::parse_instance(io::read_file(file));
  Allocation alloc = io::parse_allocation(io::read_file(alloc_file), inst);
  const ValidationReport valid = validate_allocation(inst, alloc);
  const oracle::EnumerationBudget budget = budget_from_env();

  bool all_pass = true;
  std::istringstream in(props);
  std::string prop;
  int requested = 0;
  while (std::getline(in, prop, ',')) {
    if (prop.empty()) continue;
    ++requested;
    bool pass = false;
    if (prop == "eq")
      pass = metrics::is_eq(inst, alloc);
    else if (prop == "eq1")
      pass = metrics::is_eq1(inst, alloc);
    else if (prop == "ef")
      pass = metrics::is_ef(inst, alloc);
    else if (prop == "ef1")
      pass = metrics::is_ef1(inst, alloc);
    else if (prop == "nw")
      pass = metrics::is_nw(inst, alloc);
    else if (prop == "po")
      pass = oracle::pareto_undominated(inst, alloc, oracle::DominationScope::All, budget);
    else if (prop == "complete")
      pass = valid.complete;
    else if (prop == "umax-eq")
      pass = metrics::is_umax_eq(inst, alloc);
    else if (prop == "eq1-chores")
      pass = metrics::is_eq1_chores(inst, alloc);
    else if (prop.rfind("alpha-eq1=", 0) == 0)
      pass = metrics::is_alpha_eq1(inst, alloc, metrics::parse_ratio(prop.substr(10)));
    else if (prop.rfind("alpha-ef1=", 0) == 0)
      pass = metrics::is_alpha_ef1(inst, alloc, metrics::parse_ratio(prop.substr(10)));
    else
      fail(Error::Code::ParseError, "unknown property '" + prop + "'");
    out << prop << ": " << (pass ? "pass" : "fail") << "\n";
    all_pass = all_pass && pass;
  }
  if (requested == 0) fail(Error::Code::ParseError, "--props must name at least one property");

  std::vector<Value> profile = metrics::utility_profile(inst, alloc);
  out << "utilities:";
  for (Value u : profile) out << " " << u;
  out << "\n";
  return all_pass ? kExitOk : kExitCheckFailed;
}

oracle::PropertyQuery parse_query(const std::string& props) {
  oracle::PropertyQuery q;
  std::istringstream in(props);
  std::string prop;
  while (std::getline(in, prop, ',')) {
    if (prop.empty()) continue;
    if (prop == "eq1")
      q.eq1 = true;
    else if (prop == "ef1")
      q.ef1 = true;
    else if (prop == "nw")
      q.nw = true;
    else if (prop == "po")
      q.po = true;
    else if (prop == "complete")
      q.complete = true;
    else if (prop.rfind("egal>=", 0) == 0)
      q.egal_at_least = std::stoll(prop.substr(6));
    else if (prop.rfind("util>=", 0) == 0)
      q.util_at_least = std::stoll(prop.substr(6));
    else
      fail(Error::Code::ParseError, "unknown oracle property '" + prop + "'");
  }
  return q;
}

int cmd_oracle(const std::string& file, const std::string& find_props, bool max_egal,
               const std::string& dominates_file, const std::string& within,
               const std::string& order_text, std::ostream& out) {
  Instance inst = io::parse_instance(io::read_file(file));
  const oracle::EnumerationBudget budget = budget_from_env();

  if (max_egal) {
    Ordering order = parse_order(order_text, inst);
    oracle::MaxEgalitarian best = oracle::max_egalitarian(inst, order, budget);
    out << "max-egalitarian: " << best.value << "\nwitness:\n";
    print_allocation(out, inst, best.witness);
    return kExitOk;
  }

  if (!dominates_file.empty()) {
    Allocation alloc = io::parse_allocation(io::read_file(dominates_file), inst);
    if (within != "all" && within != "sigma-eq1")
      fail(Error::Code::ParseError, "--within must be 'all' or 'sigma-eq1'");
    oracle::DominationScope scope = within == "sigma-eq1" ? oracle::DominationScope::SigmaEq1Complete
                                                          : oracle::DominationScope::All;
    auto witness = oracle::find_dominating(inst, alloc, scope, budget);
    if (!witness) {
      out << "NONE\n";
      return kExitOk;
    }
    out << "dominating:\n";
    print_allocation(out, inst, *witness);
    return kExitOk;
  }

  std::optional<Ordering> order;
  if (!order_text.empty()) order = parse_order(order_text, inst);
  std::optional<Allocation> witness =
      oracle::exists_satisfying(inst, parse_query(find_props), order, budget);
  if (!witness) {
    out << "NONE\n";
    return kExitOk;
  }
  out << "witness:\n";
  print_allocation(out, inst, *witness);
  return kExitOk;
}

int cmd_reduce(const std::string& lnes_file, const std::string& target, const std::string& out_file,
               const std::string& tau_file, const std::string& alloc_out, std::ostream& out) {
  reductions::LnesInstance lnes = reductions::parse_lnes(io::read_file(lnes_file));
  reductions::Gadget gadget = [&] {
    if (target == "nw") return reductions::build_nw_instance(lnes);
    if (target == "eq1-po") return reductions::build_eq1_po_instance(lnes);
    if (target == "ef1-po") return reductions::build_ef1_po_instance(lnes, false);
    if (target == "ef1-po-d") return reductions::build_ef1_po_instance(lnes, true);
    fail(Error::Code::ParseError, "unknown reduction target '" + target + "'");
  }();

  std::string doc = io::serialize_instance(gadget.instance);
  if (out_file.empty())
    out << doc;
  else
    io::write_file(out_file, doc);

  if (!tau_file.empty()) {
    if (alloc_out.empty())
      fail(Error::Code::ParseError, "--tau requires --alloc-out for the forward-mapped allocation");
    reductions::LnesAssignment tau = reductions::parse_assignment(io::read_file(tau_file), lnes);
    Allocation alloc = reductions::forward_map(gadget, lnes, tau);
    io::write_file(alloc_out, io::serialize_allocation(gadget.instance, alloc));
  }
  return kExitOk;
}

int cmd_gen(const gen::GenSpec& spec, const std::string& profile, const std::string& out_file,
            std::ostream& out) {
  gen::GenSpec fixed = spec;
  if (profile == "uniform")
    fixed.profile = gen::Profile::Uniform;
  else if (profile == "binary")
    fixed.profile = gen::Profile::Binary;
  else if (profile == "binary-extremal")
    fixed.profile = gen::Profile::BinaryExtremal;
  else if (profile == "identical")
    fixed.profile = gen::Profile::Identical;
  else
    fail(Error::Code::ParseError, "unknown profile '" + profile + "'");

  std::string doc = io::serialize_instance(gen::generate(fixed));
  if (out_file.empty())
    out << doc;
  else
    io::write_file(out_file, doc);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"connected EQ1 allocations on a path: solvers, checkers, oracle, gadgets"};
  app.require_subcommand(1);

  std::string file, alloc_file, order_text, props, alg, out_file;
  std::string target, tau_file, alloc_out, within = "all", find_props, dominates_file;
  bool max_egal = false;
  gen::GenSpec spec;
  std::string profile = "uniform";

  CLI::App* solve = app.add_subcommand("solve", "run a solver on an instance file");
  solve->add_option("file", file)->required();
  solve->add_option("--alg", alg, "eq1-complete | eq1-chores | po-star | extremal")->required();
  solve->add_option("--order", order_text, "comma-separated agent names or 1-based indices");
  solve->add_option("--out", out_file, "also write the allocation as JSON");

  CLI::App* check = app.add_subcommand("check", "evaluate properties of an allocation");
  check->add_option("file", file)->required();
  check->add_option("allocation", alloc_file)->required();
  check->add_option("--props", props,
                    "eq,eq1,ef,ef1,nw,po,complete,umax-eq,eq1-chores,alpha-eq1=P/Q,alpha-ef1=P/Q")
      ->required();

  CLI::App* orc = app.add_subcommand("oracle", "exhaustive queries on small instances");
  orc->add_option("file", file)->required();
  orc->add_option("--find", find_props, "find an allocation satisfying all properties");
  orc->add_flag("--max-egal", max_egal, "optimal egalitarian welfare for --order");
  orc->add_option("--dominates", dominates_file, "check Pareto domination of an allocation");
  orc->add_option("--within", within, "domination class: all | sigma-eq1");
  orc->add_option("--order", order_text);

  CLI::App* reduce = app.add_subcommand("reduce", "compile a formula into a path instance");
  reduce->add_option("file", file)->required();
  reduce->add_option("--target", target, "nw | eq1-po | ef1-po | ef1-po-d")->required();
  reduce->add_option("--out", out_file, "write the instance document here instead of stdout");
  reduce->add_option("--tau", tau_file, "satisfying assignment to forward-map");
  reduce->add_option("--alloc-out", alloc_out, "write the forward-mapped allocation here");

  CLI::App* generate = app.add_subcommand("gen", "deterministic random instance");
  generate->add_option("--m", spec.m)->required();
  generate->add_option("--n", spec.n)->required();
  std::string kind_text = "goods";
  generate->add_option("--kind", kind_text, "goods | chores");
  generate->add_option("--profile", profile, "uniform | binary | binary-extremal | identical");
  generate->add_option("--max-value", spec.max_value);
  generate->add_option("--density", spec.density);
  generate->add_option("--seed", spec.seed);
  generate->add_option("--out", out_file);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (solve->parsed()) return cmd_solve(file, alg, order_text, out_file, out);
    if (check->parsed()) return cmd_check(file, alloc_file, props, out);
    if (orc->parsed())
      return cmd_oracle(file, find_props, max_egal, dominates_file, within, order_text, out);
    if (reduce->parsed()) return cmd_reduce(file, target, out_file, tau_file, alloc_out, out);
    if (generate->parsed()) {
      if (kind_text == "chores")
        spec.kind = ItemKind::Chores;
      else if (kind_text != "goods")
        fail(Error::Code::ParseError, "unknown kind '" + kind_text + "'");
      return cmd_gen(spec, profile, out_file, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitParse;
}

}  // namespace eqpath::cli
