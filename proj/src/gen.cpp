#include "eqpath/gen.hpp"

namespace eqpath::gen {

namespace {

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t bounded(std::uint64_t n) { return next() % n; }
  bool coin(double prob) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < prob; }
};

std::vector<Value> uniform_row(Rng& rng, int m, Value max_value, ItemKind kind) {
  std::vector<Value> row(m);
  for (Value& x : row) {
    x = static_cast<Value>(rng.bounded(static_cast<std::uint64_t>(max_value) + 1));
    if (kind == ItemKind::Chores) x = -x;
  }
  return row;
}

// density is the probability of a nonzero entry: an approval for goods, a
// real chore for chores.
std::vector<Value> binary_row(Rng& rng, int m, double density, ItemKind kind) {
  std::vector<Value> row(m);
  for (Value& x : row) x = rng.coin(density) ? (kind == ItemKind::Goods ? 1 : -1) : 0;
  return row;
}

}  // namespace

Instance generate(const GenSpec& spec) {
  if (spec.m < 1 || spec.n < 1)
    fail(Error::Code::InvalidInstance, "generator needs at least one good and one agent");
  if (spec.max_value < 0) fail(Error::Code::InvalidInstance, "max value must be non-negative");
  if (spec.profile == Profile::BinaryExtremal && spec.kind == ItemKind::Chores)
    fail(Error::Code::KindMismatch, "binary-extremal generation is defined for goods");

  Rng rng(spec.seed);
  std::vector<Agent> agents;
  agents.reserve(spec.n);

  std::vector<Value> shared;
  if (spec.profile == Profile::Identical)
    shared = uniform_row(rng, spec.m, spec.max_value, spec.kind);

  for (int i = 0; i < spec.n; ++i) {
    std::vector<Value> row;
    switch (spec.profile) {
      case Profile::Uniform:
        row = uniform_row(rng, spec.m, spec.max_value, spec.kind);
        break;
      case Profile::Binary:
        row = binary_row(rng, spec.m, spec.density, spec.kind);
        break;
      case Profile::Identical:
        row = shared;
        break;
      case Profile::BinaryExtremal: {
        row.assign(spec.m, 0);
        const bool left = rng.coin(0.5);
        const int endpoint = 1 + static_cast<int>(rng.bounded(spec.m));
        if (left)
          for (int j = 1; j <= endpoint; ++j) row[j - 1] = 1;
        else
          for (int j = endpoint; j <= spec.m; ++j) row[j - 1] = 1;
        break;
      }
    }
    agents.push_back({"a" + std::to_string(i + 1), Valuation::additive(std::move(row))});
  }
  return Instance(spec.kind, spec.m, std::move(agents));
}

}  // namespace eqpath::gen
