#pragma once

#include <iosfwd>
#include <string>

#include "survnet/raw_network.hpp"

namespace survnet {

// Line-oriented grid description:
//   net <name>
//   node <id> gen <capacity>
//   node <id> sub
//   node <id> load <demand>
//   node <id> subload <demand>
//   edge <id> <nodeA> <nodeB> [x<multiplicity>]
// '#' starts a comment. Unknown keywords and duplicate ids are rejected
// with the offending line number.

RawNetwork parse_network(std::istream& in, const std::string& origin);
RawNetwork parse_network_file(const std::string& path);
RawNetwork parse_network_text(const std::string& text, const std::string& origin = "<text>");

void serialize_network(const RawNetwork& net, std::ostream& out);
std::string serialize_network(const RawNetwork& net);

} // namespace survnet
