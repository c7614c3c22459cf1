#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqpath/core.hpp"
#include "helpers.hpp"

using namespace eqpath;
using namespace eqpath::testing;

TEST_CASE("bundle values for additive valuations") {
  Instance inst = identical_spike();
  CHECK(bundle_value(inst, 0, Interval{1, 3}) == 3);
  CHECK(bundle_value(inst, 2, Interval{7, 7}) == 12);
  CHECK(bundle_value(inst, 1, std::nullopt) == 0);
  CHECK_THROWS_AS(bundle_value(inst, 0, Interval{0, 2}), Error);
  CHECK_THROWS_AS(bundle_value(inst, 0, Interval{5, 8}), Error);
  CHECK_THROWS_AS(bundle_value(inst, 9, Interval{1, 1}), Error);
}

TEST_CASE("interval values match an independent per-good summation") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = random_goods(7, 3, 9, 100 + seed);
    for (int i = 0; i < inst.num_agents(); ++i)
      for (int l = 1; l <= inst.num_goods(); ++l)
        for (int r = l; r <= inst.num_goods(); ++r) {
          Value expect = 0;
          for (int j = l; j <= r; ++j) expect += inst.single(i, j);
          CHECK(inst.value(i, Interval{l, r}) == expect);
        }
  }
}

TEST_CASE("additive and re-encoded interval tables agree everywhere") {
  Instance inst = random_goods(6, 3, 5, 7);
  Instance table = inst.as_interval_table();
  for (int i = 0; i < inst.num_agents(); ++i)
    for (int l = 1; l <= inst.num_goods(); ++l)
      for (int r = l; r <= inst.num_goods(); ++r)
        CHECK(inst.value(i, Interval{l, r}) == table.value(i, Interval{l, r}));
}

TEST_CASE("realizable utilities on the identical-spike instance") {
  RealizableUtilityList list = realizable_utilities(identical_spike());
  std::vector<Value> expect = {0, 1, 2, 3, 4, 5, 6, 12, 13, 14, 15, 16, 17, 18};
  CHECK(list.values == expect);
  CHECK(list.u_max == 12);
  CHECK(list.successor(3) == Value{4});
  CHECK(list.successor(6) == Value{12});
  CHECK(!list.successor(18).has_value());
}

TEST_CASE("realizable utilities collapse to zero for all-zero valuations") {
  Instance inst = goods({{0, 0, 0}, {0, 0, 0}});
  RealizableUtilityList list = realizable_utilities(inst);
  CHECK(list.values == std::vector<Value>{0});
  CHECK(list.u_max == 0);
}

TEST_CASE("realizable utilities on the binary scan instance") {
  RealizableUtilityList list = realizable_utilities(binary_scan8());
  CHECK(list.values == std::vector<Value>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("realizable utilities contain every bundle value") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = random_goods(8, 3, 6, 300 + seed);
    RealizableUtilityList list = realizable_utilities(inst);
    for (int i = 0; i < inst.num_agents(); ++i)
      for (int l = 1; l <= inst.num_goods(); ++l)
        for (int r = l; r <= inst.num_goods(); ++r) {
          Value v = inst.value(i, Interval{l, r});
          CHECK(std::binary_search(list.values.begin(), list.values.end(), v));
        }
  }
}

TEST_CASE("allocation validation flags") {
  Instance inst = goods({{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}});

  SUBCASE("a clean split passes everything") {
    auto rep = validate_allocation(
        inst, make_alloc(inst, {Interval{1, 1}, Interval{2, 3}, Interval{4, 5}}));
    CHECK(rep.connected);
    CHECK(rep.disjoint);
    CHECK(rep.sigma_consistent);
    CHECK(rep.complete);
  }
  SUBCASE("overlap breaks disjointness") {
    auto rep = validate_allocation(
        inst, make_alloc(inst, {Interval{1, 2}, Interval{2, 3}, std::nullopt}));
    CHECK(!rep.disjoint);
  }
  SUBCASE("bundles out of sigma order are flagged") {
    Instance two = goods({{1, 1, 1, 1}, {1, 1, 1, 1}});
    auto rep = validate_allocation(two, make_alloc(two, {Interval{3, 4}, Interval{1, 2}}));
    CHECK(!rep.sigma_consistent);
    CHECK(rep.complete);
  }
  SUBCASE("missing goods break completeness") {
    auto rep = validate_allocation(
        inst, make_alloc(inst, {Interval{1, 1}, std::nullopt, Interval{4, 5}}));
    CHECK(rep.connected);
    CHECK(!rep.complete);
  }
  SUBCASE("wrong agent count is an error") {
    CHECK_THROWS_AS(validate_allocation(inst, make_alloc(inst, {Interval{1, 5}}, {0})), Error);
  }
}

TEST_CASE("complete means the covered set is exactly the path") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = random_goods(6, 3, 4, 500 + seed);
    // assemble a pseudo-random partial allocation
    int cut1 = static_cast<int>(seed % 4), cut2 = cut1 + static_cast<int>(seed % 3);
    std::vector<Bundle> bundles(3, std::nullopt);
    if (cut1 >= 1) bundles[0] = Interval{1, cut1};
    if (cut2 > cut1) bundles[1] = Interval{cut1 + 1, cut2};
    if (cut2 < 6) bundles[2] = Interval{cut2 + 1, 6};
    auto rep = validate_allocation(inst, make_alloc(inst, bundles));
    int covered = 0;
    for (const Bundle& b : bundles)
      if (b) covered += b->size();
    CHECK(rep.complete == (covered == 6));
  }
}

TEST_CASE("instance construction rejects bad input") {
  CHECK_THROWS_AS(goods({{1, -1, 0}}), Error);
  CHECK_THROWS_AS(chores({{0, 1, 0}}), Error);
  CHECK_THROWS_AS(additive_instance(ItemKind::Goods, {{}}), Error);

  // non-monotone interval table: the bigger interval is worth less
  std::vector<std::vector<Value>> rows = {{5, 1}, {2}};
  CHECK_THROWS_AS(Instance(ItemKind::Goods, 2,
                           {{"a1", Valuation::interval_table(2, rows)}}),
                  Error);
}

TEST_CASE("negation flips kind and values consistently") {
  Instance inst = chores({{0, -2, -1}, {-3, 0, 0}});
  Instance neg = inst.negated();
  CHECK(neg.kind() == ItemKind::Goods);
  for (int i = 0; i < 2; ++i)
    for (int l = 1; l <= 3; ++l)
      for (int r = l; r <= 3; ++r)
        CHECK(neg.value(i, Interval{l, r}) == -inst.value(i, Interval{l, r}));
}
