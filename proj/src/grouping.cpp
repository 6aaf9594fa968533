#include "survnet/grouping.hpp"

#include <algorithm>
#include <map>

namespace survnet {

GroupingResult group_network(const ValidatedRawNetwork& net) {
    const auto& nodes = net.nodes();
    const int nn = static_cast<int>(nodes.size());

    auto is_source = [&](int ni) { return nodes[ni].kind == NodeKind::Source; };

    // Flood over non-source nodes only.
    std::vector<int> comp(nn, -1);
    int comps = 0;
    for (int start = 0; start < nn; ++start) {
        if (is_source(start) || comp[start] >= 0)
            continue;
        int c = comps++;
        std::vector<int> stack{start};
        comp[start] = c;
        while (!stack.empty()) {
            int ni = stack.back();
            stack.pop_back();
            for (int ei : net.incident_edges(ni)) {
                const RawEdge& e = net.edges()[ei];
                int a = net.node_index(e.node_a), b = net.node_index(e.node_b);
                int peer = a == ni ? b : a;
                if (is_source(peer) || comp[peer] >= 0)
                    continue;
                comp[peer] = c;
                stack.push_back(peer);
            }
        }
    }

    std::vector<Group> groups(comps);
    for (int ni = 0; ni < nn; ++ni) {
        if (is_source(ni))
            continue;
        Group& g = groups[comp[ni]];
        g.members.push_back(nodes[ni].id);
        if (bears_sink(nodes[ni].kind))
            g.sinks.push_back(nodes[ni].id);
    }
    for (int ni = 0; ni < nn; ++ni) {
        if (!is_source(ni))
            continue;
        std::vector<int> touched;
        for (int ei : net.incident_edges(ni)) {
            const RawEdge& e = net.edges()[ei];
            int a = net.node_index(e.node_a), b = net.node_index(e.node_b);
            int peer = a == ni ? b : a;
            if (!is_source(peer))
                touched.push_back(comp[peer]);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int c : touched)
            groups[c].sources.push_back(nodes[ni].id);
    }

    for (Group& g : groups) {
        std::sort(g.members.begin(), g.members.end());
        std::sort(g.sinks.begin(), g.sinks.end());
        std::sort(g.sources.begin(), g.sources.end());
    }
    std::sort(groups.begin(), groups.end(),
              [](const Group& a, const Group& b) { return a.members.front() < b.members.front(); });

    GroupingResult r;
    for (size_t i = 0; i < groups.size(); ++i) {
        groups[i].number = static_cast<int>(i) + 1;
        r.groups.push_back(groups[i]);
    }
    for (int ni = 0; ni < nn; ++ni) {
        if (!is_source(ni))
            continue;
        int src = nodes[ni].id;
        std::vector<int> numbers;
        for (const Group& g : r.groups)
            if (std::binary_search(g.sources.begin(), g.sources.end(), src))
                numbers.push_back(g.number);
        if (numbers.size() >= 2)
            r.shared_sources.push_back({src, numbers});
        if (numbers.empty())
            r.unconnected_sources.push_back(src);
    }
    std::sort(r.shared_sources.begin(), r.shared_sources.end());
    std::sort(r.unconnected_sources.begin(), r.unconnected_sources.end());
    return r;
}

} // namespace survnet
