#pragma once

#include <cstdint>

#include "eqpath/core.hpp"

namespace eqpath::gen {

enum class Profile { Uniform, Binary, BinaryExtremal, Identical };

struct GenSpec {
  int m = 1;
  int n = 1;
  ItemKind kind = ItemKind::Goods;
  Profile profile = Profile::Uniform;
  std::uint64_t seed = 0;
  Value max_value = 8;   // uniform / identical magnitude bound
  double density = 0.5;  // binary approval probability
};

/// Deterministic for a fixed spec; the RNG is self-contained so output is
/// byte-identical across platforms. Chores flip the sign (binary chores use
/// values in {-1, 0}); binary-extremal is goods-only.
Instance generate(const GenSpec& spec);

}  // namespace eqpath::gen
