#pragma once

#include "survnet/link_network.hpp"

#include <string>

namespace survnet {

// Graphviz rendering: junctions as circles, VT and VB links as pendant
// boxes, H links as plain edges.
std::string to_dot(const LinkNetwork& net);

} // namespace survnet
