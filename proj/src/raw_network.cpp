#include "survnet/raw_network.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace survnet {

int ValidatedRawNetwork::node_index(int external_id) const {
    auto it = node_idx_.find(external_id);
    return it == node_idx_.end() ? -1 : it->second;
}

int ValidatedRawNetwork::edge_index(int external_id) const {
    auto it = edge_idx_.find(external_id);
    return it == edge_idx_.end() ? -1 : it->second;
}

const RawNode& ValidatedRawNetwork::node(int external_id) const {
    int i = node_index(external_id);
    if (i < 0)
        throw DataError("unknown node id " + std::to_string(external_id));
    return net_.nodes[i];
}

void ValidatedRawNetwork::rebuild_indices() {
    node_idx_.clear();
    edge_idx_.clear();
    for (size_t i = 0; i < net_.nodes.size(); ++i)
        node_idx_[net_.nodes[i].id] = static_cast<int>(i);
    for (size_t i = 0; i < net_.edges.size(); ++i)
        edge_idx_[net_.edges[i].id] = static_cast<int>(i);
    incidence_.assign(net_.nodes.size(), {});
    for (size_t i = 0; i < net_.edges.size(); ++i) {
        incidence_[node_idx_.at(net_.edges[i].node_a)].push_back(static_cast<int>(i));
        incidence_[node_idx_.at(net_.edges[i].node_b)].push_back(static_cast<int>(i));
    }
}

ValidatedRawNetwork validate_raw(RawNetwork net) {
    std::vector<std::string> errors;
    auto err = [&errors](const std::string& m) { errors.push_back(m); };

    if (net.nodes.empty())
        err("no nodes");

    std::map<int, int> node_seen;
    for (const RawNode& n : net.nodes) {
        if (n.id <= 0)
            err("node id " + std::to_string(n.id) + " is not positive");
        if (++node_seen[n.id] == 2)
            err("duplicate node id " + std::to_string(n.id));
        if (n.kind == NodeKind::Source) {
            if (n.capacity < 0)
                err("negative capacity on node " + std::to_string(n.id));
            if (n.demand != 0)
                err("demand on source node " + std::to_string(n.id));
        } else {
            if (n.capacity != 0)
                err("capacity on non-source node " + std::to_string(n.id));
            if (bears_sink(n.kind)) {
                if (n.demand < 0)
                    err("negative demand on node " + std::to_string(n.id));
            } else if (n.demand != 0) {
                err("demand on interconnection node " + std::to_string(n.id));
            }
        }
    }

    std::map<int, int> edge_seen;
    for (const RawEdge& e : net.edges) {
        if (++edge_seen[e.id] == 2)
            err("duplicate edge id " + std::to_string(e.id));
        if (e.node_a == e.node_b)
            err("self-loop on node " + std::to_string(e.node_a));
        for (int nid : {e.node_a, e.node_b})
            if (!node_seen.count(nid))
                err("edge " + std::to_string(e.id) + " references unknown node " +
                    std::to_string(nid));
        if (e.multiplicity < 1)
            err("edge " + std::to_string(e.id) + " has non-positive multiplicity");
    }

    bool any_source = false, any_sink = false;
    for (const RawNode& n : net.nodes) {
        any_source |= n.kind == NodeKind::Source;
        any_sink |= bears_sink(n.kind);
    }
    if (!net.nodes.empty()) {
        if (!any_source)
            err("no source node");
        if (!any_sink)
            err("no sink-bearing node");
    }

    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid network '" << net.name << "':";
        for (const std::string& e : errors)
            msg << "\n  " << e;
        throw DataError(msg.str());
    }

    ValidatedRawNetwork v;
    v.net_ = std::move(net);
    v.rebuild_indices();
    return v;
}

ValidatedRawNetwork merge_parallel(const ValidatedRawNetwork& net) {
    // Group by unordered endpoint pair, keep the smallest edge id as the
    // surviving representative.
    std::map<std::pair<int, int>, std::vector<const RawEdge*>> groups;
    for (const RawEdge& e : net.edges()) {
        auto key = std::minmax(e.node_a, e.node_b);
        groups[{key.first, key.second}].push_back(&e);
    }

    RawNetwork merged;
    merged.name = net.name();
    merged.nodes = net.nodes();
    for (auto& [key, group] : groups) {
        std::sort(group.begin(), group.end(),
                  [](const RawEdge* a, const RawEdge* b) { return a->id < b->id; });
        RawEdge e = *group.front();
        e.multiplicity = 1;
        std::vector<int> ids;
        for (const RawEdge* g : group) {
            if (g->merged_ids.empty())
                ids.push_back(g->id);
            else
                ids.insert(ids.end(), g->merged_ids.begin(), g->merged_ids.end());
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        e.merged_ids = std::move(ids);
        merged.edges.push_back(std::move(e));
    }
    // Keep the original file order of the surviving representatives.
    std::sort(merged.edges.begin(), merged.edges.end(),
              [&net](const RawEdge& a, const RawEdge& b) {
                  return net.edge_index(a.id) < net.edge_index(b.id);
              });
    return validate_raw(std::move(merged));
}

} // namespace survnet
