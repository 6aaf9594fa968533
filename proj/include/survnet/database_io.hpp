#pragma once

#include "survnet/scenario.hpp"

#include <iosfwd>
#include <string>

namespace survnet {

// Binary layout, little-endian throughout: "SVDB", version byte 1, u16 m,
// u16 class count, per element {kind u8, weight f64, class u32 or
// 0xFFFFFFFF, origin digest u32}, then 1 << m records of u64 class bits.
std::string serialize_database(const ScenarioDatabase& db);
ScenarioDatabase parse_database(const std::string& bytes, const std::string& origin);

void write_database_file(const ScenarioDatabase& db, const std::string& path);
ScenarioDatabase read_database_file(const std::string& path);

// Debug listing: scenario_bitmask,connected_classes,delivered_capacity
void export_database_csv(const ScenarioDatabase& db, std::ostream& out);

// True when the table can serve this representative: same width, classes,
// element kinds, weights, class indices and origin digests.
bool database_matches(const ScenarioDatabase& db, const Representative& rep);

} // namespace survnet
