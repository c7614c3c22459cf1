#include <doctest.h>

#include "eqpath/egalitarian.hpp"
#include "eqpath/metrics.hpp"
#include "eqpath/oracle.hpp"
#include "eqpath/postar.hpp"
#include "helpers.hpp"

using namespace eqpath;
using namespace eqpath::testing;
namespace ps = eqpath::postar;
namespace eg = eqpath::egal;
namespace mt = eqpath::metrics;
namespace orc = eqpath::oracle;

TEST_CASE("the grouping pass improves the plain scan on its defining fixture") {
  Instance inst = po_star_gap();
  Ordering sigma = Ordering::identity(3);

  Allocation plain = eg::eq1_complete(inst, sigma);
  CHECK(mt::utility_profile(inst, plain) == std::vector<Value>{1, 1, 1});

  Allocation starred = ps::po_star(inst, sigma);
  CHECK(starred.bundles ==
        std::vector<Bundle>{Interval{1, 1}, Interval{2, 3}, Interval{4, 5}});
  CHECK(mt::utility_profile(inst, starred) == std::vector<Value>{1, 2, 2});
  CHECK(!orc::pareto_undominated(inst, plain, orc::DominationScope::SigmaEq1Complete));
  CHECK(orc::pareto_undominated(inst, starred, orc::DominationScope::SigmaEq1Complete));
}

TEST_CASE("group labels on the fixtures") {
  Ordering sigma = Ordering::identity(3);

  {
    Instance inst = po_star_gap();
    auto cert = eg::optimal_theta(inst, sigma);
    auto scan = eg::leftmost_unsafe(inst, sigma, cert);
    auto lab = ps::classify_groups(inst, sigma, cert.theta, scan.unsafe_pos, scan.prefix);
    CHECK(lab.unsafe_pos == 0);
    CHECK(lab.labels == std::vector<ps::Group>{ps::Group::Two, ps::Group::One, ps::Group::One});
  }
  {
    Instance inst = binary_scan8();
    auto cert = eg::optimal_theta(inst, sigma);
    auto scan = eg::leftmost_unsafe(inst, sigma, cert);
    auto lab = ps::classify_groups(inst, sigma, cert.theta, scan.unsafe_pos, scan.prefix);
    CHECK(lab.unsafe_pos == 1);
    CHECK(lab.labels[1] == ps::Group::Two);
    CHECK(lab.labels[2] == ps::Group::Two);
    Allocation out = ps::po_star(inst, sigma);
    CHECK(mt::utility_profile(inst, out) == std::vector<Value>{3, 2, 2});
  }
  {
    // when theta+1 is out of everyone's reach, every label is group 2
    Instance inst = goods({{1, 1}, {1, 1}});
    Ordering two = Ordering::identity(2);
    auto cert = eg::optimal_theta(inst, two);
    REQUIRE(cert.next_value.has_value());
    auto scan = eg::leftmost_unsafe(inst, two, cert);
    auto lab = ps::classify_groups(inst, two, cert.theta, scan.unsafe_pos, scan.prefix);
    CHECK(scan.unsafe_pos == 0);
    for (int pos = scan.unsafe_pos; pos < 2; ++pos) CHECK(lab.labels[pos] == ps::Group::Two);
  }
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(ps::po_star(nonbinary_pair(), Ordering::identity(2)), Error);
  CHECK_THROWS_AS(ps::po_star(chores({{-1, 0}, {0, -1}}), Ordering::identity(2)), Error);

  Instance solo = goods({{1, 0, 1}});
  CHECK(ps::po_star(solo, Ordering::identity(1)).bundles ==
        std::vector<Bundle>{Interval{1, 3}});
}

TEST_CASE("degenerate instances where the optimum is already maximal") {
  Instance zero = goods({{0, 0, 0}, {0, 0, 0}});
  Allocation out = ps::po_star(zero, Ordering::identity(2));
  CHECK(validate_allocation(zero, out).all());
  CHECK(mt::utility_profile(zero, out) == std::vector<Value>{0, 0});

  // one agent values everything, the other nothing it can reach
  Instance lone = goods({{1, 1, 1}, {0, 0, 0}});
  for (const Ordering& sigma : all_orderings(2)) {
    Allocation a = ps::po_star(lone, sigma);
    CHECK(validate_allocation(lone, a).all());
    CHECK(orc::pareto_undominated(lone, a, orc::DominationScope::SigmaEq1Complete));
  }
}

TEST_CASE("PO* guarantees hold on random binary instances") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    Instance inst = random_binary(4 + seed % 5, 2 + seed % 3, 9000 + seed);
    const int n = inst.num_agents();
    for (const Ordering& sigma : all_orderings(n)) {
      Allocation out = ps::po_star(inst, sigma);
      auto cert = eg::optimal_theta(inst, sigma);

      CHECK(validate_allocation(inst, out).all());
      CHECK(mt::is_eq1(inst, out));
      for (Value u : mt::utility_profile(inst, out))
        CHECK((u == cert.theta || u == cert.theta + 1));
      CHECK(mt::egalitarian_welfare(inst, out) ==
            mt::egalitarian_welfare(inst, eg::eq1_complete(inst, sigma)));
      CHECK(orc::pareto_undominated(inst, out, orc::DominationScope::SigmaEq1Complete));
    }
  }
}

TEST_CASE("group-two labels cannot be flipped at their decision point") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = random_binary(6, 3, 9500 + seed);
    Ordering sigma = Ordering::identity(3);
    auto cert = eg::optimal_theta(inst, sigma);
    if (!cert.next_value) continue;
    auto scan = eg::leftmost_unsafe(inst, sigma, cert);
    auto lab = ps::classify_groups(inst, sigma, cert.theta, scan.unsafe_pos, scan.prefix);

    // replay the scan, asserting that each group-2 agent's theta+1 bundle
    // either does not exist or starves a successor
    int frontier = 1;
    for (int k = 0; k < scan.unsafe_pos; ++k) {
      const Bundle& b = lab.tentative[sigma.at(k)];
      if (b) frontier = b->hi + 1;
    }
    for (int pos = scan.unsafe_pos; pos < 3; ++pos) {
      const int agent = sigma.at(pos);
      if (lab.labels[pos] == ps::Group::Two) {
        bool plus_feasible = false;
        for (int r = frontier; r <= inst.num_goods() && !plus_feasible; ++r) {
          if (inst.value(agent, Interval{frontier, r}) < cert.theta + 1) continue;
          // remaining positions after pos must still reach theta from r+1
          Ordering tail;
          std::vector<Value> tail_targets;
          for (int t = pos + 1; t < 3; ++t) {
            tail.agents.push_back(sigma.at(t));
            tail_targets.push_back(cert.theta);
          }
          if (tail.agents.empty()) {
            plus_feasible = true;
            break;
          }
          // shift the frontier by solving on the suffix directly
          int f = r + 1;
          bool ok = true;
          for (std::size_t t = 0; t < tail.agents.size() && ok; ++t) {
            if (tail_targets[t] <= 0) continue;
            bool reached = false;
            for (int e = f; e <= inst.num_goods(); ++e)
              if (inst.value(tail.agents[t], Interval{f, e}) >= tail_targets[t]) {
                f = e + 1;
                reached = true;
                break;
              }
            ok = reached;
          }
          plus_feasible = ok;
        }
        CHECK(!plus_feasible);
      }
      const Bundle& b = lab.tentative[agent];
      if (b) frontier = b->hi + 1;
    }
  }
}
