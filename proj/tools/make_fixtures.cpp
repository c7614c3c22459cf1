// Regenerates the canonical fixture files under fixtures/ so that the
// serialized form stays byte-identical with the current writer.

#include <cstdio>
#include <string>

#include "eqpath/core.hpp"
#include "eqpath/io.hpp"

using namespace eqpath;

namespace {

Instance goods(std::vector<std::vector<Value>> rows) {
  std::vector<Agent> agents;
  for (std::size_t i = 0; i < rows.size(); ++i)
    agents.push_back({"a" + std::to_string(i + 1), Valuation::additive(rows[i])});
  return Instance(ItemKind::Goods, static_cast<int>(rows[0].size()), std::move(agents));
}

Instance chores(std::vector<std::vector<Value>> rows) {
  std::vector<Agent> agents;
  for (std::size_t i = 0; i < rows.size(); ++i)
    agents.push_back({"a" + std::to_string(i + 1), Valuation::additive(rows[i])});
  return Instance(ItemKind::Chores, static_cast<int>(rows[0].size()), std::move(agents));
}

void write(const std::string& dir, const std::string& name, const std::string& content) {
  io::write_file(dir + "/" + name, content);
  std::printf("wrote %s/%s\n", dir.c_str(), name.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";

  Instance identical_spike =
      goods({{1, 1, 1, 1, 1, 1, 12}, {1, 1, 1, 1, 1, 1, 12}, {1, 1, 1, 1, 1, 1, 12}});
  write(dir, "identical_spike.json", io::serialize_instance(identical_spike));

  write(dir, "binary_scan8.json",
        io::serialize_instance(goods(
            {{1, 1, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 1, 1, 1, 0}, {0, 0, 0, 1, 0, 1, 0, 1}})));

  write(dir, "po_star_gap.json",
        io::serialize_instance(goods({{1, 0, 0, 1, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 1, 1}})));

  write(dir, "po_unique_conflict.json",
        io::serialize_instance(goods({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 1, 1}})));

  write(dir, "wasteful_dominates.json",
        io::serialize_instance(goods({{1, 10, 0}, {10, 1, 1}})));

  write(dir, "nonbinary_pair.json",
        io::serialize_instance(goods({{1, 3, 1, 0}, {0, 0, 0, 2}})));

  write(dir, "chores_pair.json", io::serialize_instance(chores({{-1, -1, -1}, {-1, -1, -1}})));

  Allocation skewed;
  skewed.order = Ordering::identity(3);
  skewed.bundles = {std::nullopt, Interval{1, 6}, Interval{7, 7}};
  write(dir, "skewed_spike_allocation.json", io::serialize_allocation(identical_spike, skewed));

  write(dir, "lnes_p1.txt", "p 1\np1 r1 q1 s1\n");
  write(dir, "lnes_p2.txt", "p 2\np1 r1 q2 s2\nq1 s1 p2 r2\n");
  write(dir, "tau_p1.txt", "x1 1\np1 1\nr1 1\nq1 0\ns1 0\n");
  return 0;
}
