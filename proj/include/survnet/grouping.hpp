#pragma once

#include "survnet/raw_network.hpp"

#include <vector>

namespace survnet {

// A group is a connected component of the network with every source
// removed. Sources sit on the boundary: one source may feed several
// groups, but power never crosses a group boundary through a source.
struct Group {
    int number = 0;            // 1-based, ordered by smallest member node id
    std::vector<int> members;  // non-source node ids, ascending
    std::vector<int> sinks;    // sink-bearing members, ascending
    std::vector<int> sources;  // source ids adjacent to the group, ascending
};

struct GroupingResult {
    std::vector<Group> groups;
    // source id -> group numbers it feeds (only sources feeding 2+ groups)
    std::vector<std::pair<int, std::vector<int>>> shared_sources;
    std::vector<int> unconnected_sources; // sources with no edges at all
};

GroupingResult group_network(const ValidatedRawNetwork& net);

} // namespace survnet
