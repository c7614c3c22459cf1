#pragma once

#include <string>

#include "eqpath/core.hpp"

namespace eqpath::io {

// Instance document:
//   {"kind": "goods"|"chores", "m": <int>,
//    "agents": [{"name": "...", "additive": [<m ints>]}
//               | {"name": "...", "interval_table": [[...], ...]}]}
// Allocation document:
//   {"order": ["a1", ...], "bundles": {"a1": [lo, hi] | [], ...}}
// Serialization is byte-deterministic; parse(serialize(x)) is the identity.

std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string serialize_allocation(const Instance& inst, const Allocation& alloc);
Allocation parse_allocation(const std::string& text, const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace eqpath::io
