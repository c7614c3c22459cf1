#include <doctest.h>

#include "eqpath/extremal.hpp"
#include "eqpath/metrics.hpp"
#include "eqpath/oracle.hpp"
#include "helpers.hpp"

using namespace eqpath;
using namespace eqpath::testing;
namespace ex = eqpath::extremal;
namespace mt = eqpath::metrics;
namespace orc = eqpath::oracle;

TEST_CASE("classification of prefix and suffix approvers") {
  Instance inst = goods({{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 1, 1}});
  auto profile = ex::classify_extremal(inst);
  REQUIRE(profile.left.size() == 2);
  CHECK(profile.left[0].agent == 0);
  CHECK(profile.left[0].endpoint == 2);
  CHECK(profile.left[1].agent == 2);  // full-path approver defaults left
  CHECK(profile.left[1].endpoint == 4);
  REQUIRE(profile.right.size() == 1);
  CHECK(profile.right[0].endpoint == 3);

  auto flipped = ex::classify_extremal(inst, ex::Side::Right);
  CHECK(flipped.left.size() == 1);
  CHECK(flipped.right.size() == 2);

  CHECK_THROWS_AS(ex::classify_extremal(goods({{0, 1, 1, 0}})), Error);
  CHECK_THROWS_AS(ex::classify_extremal(goods({{0, 0, 0, 0}})), Error);
  CHECK_THROWS_AS(ex::classify_extremal(wasteful_dominates()), Error);
}

TEST_CASE("one-sided block construction") {
  Instance inst = goods({{1, 1, 0, 0, 0}, {1, 1, 1, 1, 0}});
  std::vector<ex::ExtremalProfile::Entry> agents = {{0, 2}, {1, 4}};

  auto ok = ex::solve_one_sided(inst, agents, ex::Side::Left, 1, 4);
  REQUIRE(ok.has_value());
  CHECK((*ok)[0].second == Bundle{Interval{1, 2}});
  CHECK((*ok)[1].second == Bundle{Interval{3, 4}});

  // five goods over two agents splits into a floor and a ceiling block
  Instance five = goods({{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}});
  auto split = ex::solve_one_sided(five, {{0, 5}, {1, 5}}, ex::Side::Left, 1, 5);
  REQUIRE(split.has_value());
  CHECK((*split)[0].second == Bundle{Interval{1, 2}});
  CHECK((*split)[1].second == Bundle{Interval{3, 5}});

  // the second block would contain unapproved goods
  Instance clash = goods({{1, 0, 0}, {1, 0, 0}});
  CHECK(!ex::solve_one_sided(clash, {{0, 1}, {1, 1}}, ex::Side::Left, 1, 3).has_value());

  // leftover goods with no agents on this side cannot be placed
  CHECK(!ex::solve_one_sided(inst, {}, ex::Side::Left, 1, 2).has_value());
}

TEST_CASE("two-sided concatenation fixture") {
  Instance inst = goods({{1, 1, 0, 0, 0, 0}, {1, 1, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1}});
  auto alloc = ex::solve_extremal(inst);
  REQUIRE(alloc.has_value());
  CHECK(alloc->bundles ==
        std::vector<Bundle>{Interval{1, 2}, Interval{3, 4}, Interval{5, 6}});
  CHECK(mt::utility_profile(inst, *alloc) == std::vector<Value>{2, 2, 2});
  CHECK(mt::is_nw(inst, *alloc));
  CHECK(mt::is_eq1(inst, *alloc));
}

TEST_CASE("all-left instances reduce to the one-sided case") {
  Instance inst = goods({{1, 1, 0, 0}, {1, 1, 1, 1}});
  auto alloc = ex::solve_extremal(inst);
  REQUIRE(alloc.has_value());
  CHECK(validate_allocation(inst, *alloc).all());
  CHECK(mt::is_nw(inst, *alloc));
}

TEST_CASE("a NO answer is certified by the oracle") {
  // both agents want only the first good, so the rest cannot be placed
  Instance inst = goods({{1, 0, 0}, {1, 0, 0}});
  CHECK(!ex::solve_extremal(inst).has_value());
  orc::PropertyQuery q;
  q.nw = true;
  q.eq1 = true;
  CHECK(!orc::exists_satisfying(inst, q, std::nullopt).has_value());
}

TEST_CASE("decision agreement with the oracle on random extremal instances") {
  int yes = 0, no = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    gen::GenSpec spec;
    spec.m = 4 + seed % 5;
    spec.n = 2 + seed % 3;
    spec.profile = gen::Profile::BinaryExtremal;
    spec.seed = 10000 + seed;
    Instance inst = gen::generate(spec);

    auto mine = ex::solve_extremal(inst);
    orc::PropertyQuery q;
    q.nw = true;
    q.eq1 = true;
    bool oracle_yes = orc::exists_satisfying(inst, q, std::nullopt).has_value();
    CHECK(mine.has_value() == oracle_yes);
    if (mine) {
      ++yes;
      CHECK(mt::is_nw(inst, *mine));
      CHECK(mt::is_eq1(inst, *mine));
      CHECK(validate_allocation(inst, *mine).all());
      // non-wasteful binary utilities equal bundle sizes
      auto profile = mt::utility_profile(inst, *mine);
      for (int i = 0; i < inst.num_agents(); ++i) {
        const Bundle& b = mine->bundles[i];
        CHECK(profile[i] == (b ? b->size() : 0));
      }
    } else {
      ++no;
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("the full-path default does not change the decision") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    gen::GenSpec spec;
    spec.m = 5 + seed % 4;
    spec.n = 2 + seed % 3;
    spec.profile = gen::Profile::BinaryExtremal;
    spec.seed = 11000 + seed;
    Instance inst = gen::generate(spec);
    CHECK(ex::solve_extremal(inst, ex::Side::Left).has_value() ==
          ex::solve_extremal(inst, ex::Side::Right).has_value());
  }
}
