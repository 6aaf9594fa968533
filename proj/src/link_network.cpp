#include "survnet/link_network.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace survnet {

int LinkNetwork::count_kind(LinkKind k) const {
    int n = 0;
    for (const LinkElement& e : elements)
        n += e.kind == k;
    return n;
}

int LinkNetwork::element_by_name(const std::string& name) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i].name == name)
            return static_cast<int>(i);
    return -1;
}

double LinkNetwork::source_capacity(int source_id) const {
    for (const LinkElement& e : elements)
        if (e.kind == LinkKind::VT && e.source_id == source_id)
            return e.weight;
    throw DataError("unknown source id " + std::to_string(source_id));
}

std::vector<std::vector<int>> LinkNetwork::incidence() const {
    std::vector<std::vector<int>> inc(junctions.size());
    for (size_t i = 0; i < elements.size(); ++i) {
        const LinkElement& e = elements[i];
        inc[e.attach_a].push_back(static_cast<int>(i));
        if (e.kind == LinkKind::H && e.attach_b != e.attach_a)
            inc[e.attach_b].push_back(static_cast<int>(i));
    }
    return inc;
}

namespace {

struct ProtoVB {
    int sink_id;
    double demand;
    int junction_node;  // raw node id, or -1 when attached at a synthetic junction
    int synth_edge;     // edge id of the synthetic junction, or -1
    int order_edge;     // first chain edge id; -1 for the implicit VB of a subload
    std::vector<RawRef> provenance;
};

struct ProtoVT {
    int source_id;
    double capacity;
    int edge_id;
    int junction_node;
    int synth_edge;
};

struct ProtoH {
    int edge_id;
    int node_a, node_b;
};

} // namespace

LinkNetwork to_link_network(const ValidatedRawNetwork& net) {
    const auto& nodes = net.nodes();
    const auto& edges = net.edges();
    const int nn = static_cast<int>(nodes.size());
    const int ne = static_cast<int>(edges.size());

    auto kind_of = [&](int ni) { return nodes[ni].kind; };
    auto is_junction_capable = [&](int ni) {
        return kind_of(ni) == NodeKind::Interconnection ||
               kind_of(ni) == NodeKind::InterconnectionWithSink;
    };

    // Rejected outright: these shapes have no links-only equivalent.
    {
        std::vector<std::string> errors;
        for (const RawEdge& e : edges) {
            NodeKind ka = kind_of(net.node_index(e.node_a));
            NodeKind kb = kind_of(net.node_index(e.node_b));
            if (ka == NodeKind::Source && kb == NodeKind::Source)
                errors.push_back("edge " + std::to_string(e.id) +
                                 " connects two sources (" + std::to_string(e.node_a) + ", " +
                                 std::to_string(e.node_b) + ")");
            if (ka == NodeKind::Sink && kb == NodeKind::Sink)
                errors.push_back("edge " + std::to_string(e.id) +
                                 " connects two sinks (" + std::to_string(e.node_a) + ", " +
                                 std::to_string(e.node_b) + ")");
        }
        for (int ni = 0; ni < nn; ++ni)
            if (kind_of(ni) == NodeKind::Interconnection && net.incident_edges(ni).empty())
                errors.push_back("isolated interconnection node " + std::to_string(nodes[ni].id));
        if (!errors.empty()) {
            std::ostringstream msg;
            msg << "cannot represent network '" << net.name() << "' by links:";
            for (const std::string& e : errors)
                msg << "\n  " << e;
            throw DataError(msg.str());
        }
    }

    std::vector<bool> edge_consumed(ne, false);
    std::vector<bool> node_absorbed(nn, false);
    std::vector<bool> hosts_element(nn, false);
    std::map<int, int> direct_pair; // dense edge index -> source node id
    std::vector<std::string> warnings;

    std::vector<ProtoVB> vbs;
    std::vector<ProtoVT> vts;
    std::vector<ProtoH> hs;

    // Node ids in ascending order drive every pass; the resulting element
    // ordering is a pure function of the input description.
    std::vector<int> by_id(nn);
    for (int i = 0; i < nn; ++i)
        by_id[i] = i;
    std::sort(by_id.begin(), by_id.end(),
              [&](int a, int b) { return nodes[a].id < nodes[b].id; });

    auto sorted_incidence = [&](int ni) {
        std::vector<int> inc = net.incident_edges(ni);
        std::sort(inc.begin(), inc.end(),
                  [&](int a, int b) { return edges[a].id < edges[b].id; });
        return inc;
    };
    auto other_end = [&](int ei, int ni) {
        const RawEdge& e = edges[ei];
        int a = net.node_index(e.node_a), b = net.node_index(e.node_b);
        return a == ni ? b : a;
    };

    // Sources dissolve first: every incident edge becomes a VT attachment.
    for (int ni : by_id) {
        if (kind_of(ni) != NodeKind::Source)
            continue;
        for (int ei : sorted_incidence(ni)) {
            int peer = other_end(ei, ni);
            edge_consumed[ei] = true;
            if (is_junction_capable(peer)) {
                vts.push_back({nodes[ni].id, nodes[ni].capacity, edges[ei].id, nodes[peer].id, -1});
                hosts_element[peer] = true;
            } else {
                // Pure sink on the far side: modeled through a synthesized
                // junction, paired up during the sink pass below.
                direct_pair[ei] = nodes[ni].id;
                warnings.push_back("isolated source-sink pair: source " +
                                   std::to_string(nodes[ni].id) + " and sink " +
                                   std::to_string(nodes[peer].id) + " share edge " +
                                   std::to_string(edges[ei].id) + " with no interconnection");
            }
        }
    }

    // Sink nodes collapse along their attachment chains. A chain absorbs
    // interior interconnections that have nothing else attached.
    for (int ni : by_id) {
        if (kind_of(ni) != NodeKind::Sink)
            continue;
        for (int ei : sorted_incidence(ni)) {
            if (auto it = direct_pair.find(ei); it != direct_pair.end()) {
                vts.push_back({it->second, net.node(it->second).capacity, edges[ei].id, -1,
                               edges[ei].id});
                vbs.push_back({nodes[ni].id, nodes[ni].demand, -1, edges[ei].id, edges[ei].id,
                               {}});
                continue;
            }
            std::vector<RawRef> prov{edge_ref(edges[ei].id)};
            edge_consumed[ei] = true;
            int cur = other_end(ei, ni);
            for (;;) {
                assert(!node_absorbed[cur]);
                if (kind_of(cur) != NodeKind::Interconnection || hosts_element[cur])
                    break;
                std::vector<int> free;
                for (int fe : sorted_incidence(cur))
                    if (!edge_consumed[fe])
                        free.push_back(fe);
                if (free.size() != 1)
                    break;
                int next = other_end(free[0], cur);
                if (kind_of(next) == NodeKind::Sink)
                    break; // the far sink attaches its own VB here
                node_absorbed[cur] = true;
                prov.push_back(node_ref(nodes[cur].id));
                prov.push_back(edge_ref(edges[free[0]].id));
                edge_consumed[free[0]] = true;
                cur = next;
            }
            std::sort(prov.begin(), prov.end());
            vbs.push_back({nodes[ni].id, nodes[ni].demand, nodes[cur].id, -1, edges[ei].id,
                           std::move(prov)});
            hosts_element[cur] = true;
        }
        if (sorted_incidence(ni).empty())
            throw DataError("sink node " + std::to_string(nodes[ni].id) +
                            " has no attachment to the network");
    }

    // Interconnections with an attached load keep their junction and gain
    // an implicit VB for the load.
    for (int ni : by_id)
        if (kind_of(ni) == NodeKind::InterconnectionWithSink)
            vbs.push_back({nodes[ni].id, nodes[ni].demand, nodes[ni].id, -1, -1,
                           {node_ref(nodes[ni].id)}});

    // Everything left connects interconnections.
    for (int ei = 0; ei < ne; ++ei) {
        if (edge_consumed[ei])
            continue;
        int a = net.node_index(edges[ei].node_a);
        int b = net.node_index(edges[ei].node_b);
        assert(is_junction_capable(a) && is_junction_capable(b));
        assert(!node_absorbed[a] && !node_absorbed[b]);
        hs.push_back({edges[ei].id, nodes[a].id, nodes[b].id});
    }

    // Junction table: surviving interconnections by ascending id, then
    // synthesized junctions by edge id.
    LinkNetwork ln;
    ln.name = net.name();
    ln.warnings = std::move(warnings);
    std::map<int, int> junction_of_node;
    std::map<int, int> junction_of_synth;
    for (int ni : by_id) {
        if (!is_junction_capable(ni) || node_absorbed[ni])
            continue;
        junction_of_node[nodes[ni].id] = static_cast<int>(ln.junctions.size());
        ln.junctions.push_back({nodes[ni].id, -1, "J" + std::to_string(nodes[ni].id)});
    }
    {
        std::set<int> synth_edges;
        for (const ProtoVB& p : vbs)
            if (p.synth_edge >= 0)
                synth_edges.insert(p.synth_edge);
        for (int eid : synth_edges) {
            junction_of_synth[eid] = static_cast<int>(ln.junctions.size());
            ln.junctions.push_back({-1, eid, "Je" + std::to_string(eid)});
        }
    }

    // Final element order fixes the scenario bit positions: VB, VT, H,
    // each sub-ordered by (external id, attachment order).
    std::sort(vbs.begin(), vbs.end(), [](const ProtoVB& a, const ProtoVB& b) {
        return std::tie(a.sink_id, a.order_edge) < std::tie(b.sink_id, b.order_edge);
    });
    std::sort(vts.begin(), vts.end(), [](const ProtoVT& a, const ProtoVT& b) {
        return std::tie(a.source_id, a.edge_id) < std::tie(b.source_id, b.edge_id);
    });
    std::sort(hs.begin(), hs.end(),
              [](const ProtoH& a, const ProtoH& b) { return a.edge_id < b.edge_id; });

    auto count_by = [](auto& v, auto key) {
        std::map<int, int> c;
        for (auto& x : v)
            ++c[key(x)];
        return c;
    };
    auto vb_count = count_by(vbs, [](const ProtoVB& p) { return p.sink_id; });
    auto vt_count = count_by(vts, [](const ProtoVT& p) { return p.source_id; });

    std::map<int, int> seen;
    for (const ProtoVB& p : vbs) {
        LinkElement e;
        e.kind = LinkKind::VB;
        e.weight = -p.demand;
        e.sink_id = p.sink_id;
        e.attach_a = p.synth_edge >= 0 ? junction_of_synth.at(p.synth_edge)
                                       : junction_of_node.at(p.junction_node);
        e.name = "VB" + std::to_string(p.sink_id);
        if (vb_count[p.sink_id] > 1)
            e.name += std::to_string(++seen[p.sink_id]);
        e.provenance = p.provenance;
        ln.elements.push_back(std::move(e));
    }
    seen.clear();
    for (const ProtoVT& p : vts) {
        LinkElement e;
        e.kind = LinkKind::VT;
        e.weight = p.capacity;
        e.source_id = p.source_id;
        e.attach_a = p.synth_edge >= 0 ? junction_of_synth.at(p.synth_edge)
                                       : junction_of_node.at(p.junction_node);
        e.name = "VT" + std::to_string(p.source_id);
        if (vt_count[p.source_id] > 1)
            e.name += std::to_string(++seen[p.source_id]);
        e.provenance = {edge_ref(p.edge_id)};
        ln.elements.push_back(std::move(e));
    }
    int hseq = 0;
    for (const ProtoH& p : hs) {
        LinkElement e;
        e.kind = LinkKind::H;
        e.attach_a = junction_of_node.at(p.node_a);
        e.attach_b = junction_of_node.at(p.node_b);
        if (e.attach_a > e.attach_b)
            std::swap(e.attach_a, e.attach_b);
        e.name = "H" + std::to_string(++hseq);
        e.provenance = {edge_ref(p.edge_id)};
        ln.elements.push_back(std::move(e));
    }

    for (size_t i = 0; i < ln.elements.size(); ++i)
        ln.elements[i].origins = {static_cast<int>(i)};
    return ln;
}

} // namespace survnet
