#pragma once

#include <string>
#include <vector>

#include "survnet/raw_network.hpp"
#include "survnet/types.hpp"

namespace survnet {

struct Junction {
    int raw_node_id = -1;   // -1 for a junction synthesized on a direct source-sink edge
    int synth_edge_id = -1; // the edge that required synthesis, else -1
    std::string name;       // "J20", or "Je5" for synthesized
};

struct LinkElement {
    LinkKind kind = LinkKind::H;
    double weight = 0.0; // VT: +capacity of its source, VB: -demand, H: 0
    int source_id = -1;  // VT only; several VT elements may share one source
    int sink_id = -1;    // VB only
    int attach_a = -1;   // junction index; VT/VB attach here only
    int attach_b = -1;   // H only (may equal attach_a after degenerate merges)
    std::string name;    // "VB20", "VT761", "H1", ...
    std::vector<RawRef> provenance; // raw edges and absorbed chain nodes, sorted
    std::vector<int> origins;       // element indices of the network this was derived
                                    // from; identity for a freshly built network

    bool is_self_loop() const { return kind == LinkKind::H && attach_a == attach_b; }
};

/// Links-only representation. The element order defines the bit positions
/// of fault-scenario bitmasks and is reproducible for identical inputs.
struct LinkNetwork {
    std::string name;
    std::vector<Junction> junctions;
    std::vector<LinkElement> elements;
    std::vector<std::string> warnings;

    int element_count() const { return static_cast<int>(elements.size()); }
    int count_kind(LinkKind k) const;
    int element_by_name(const std::string& name) const; // -1 if unknown
    double source_capacity(int source_id) const;        // weight of any VT of that source

    /// Junction indices -> incident element indices, in element order.
    std::vector<std::vector<int>> incidence() const;
};

/// Builds the links-only representation of a validated, parallel-merged grid:
/// sources dissolve into VT elements (one per incident edge, sharing the
/// source id), sink nodes collapse with their attachment chains into VB
/// elements (one per attachment), interconnections with an attached load keep
/// their junction and gain an implicit VB, remaining edges become H elements.
/// A direct source-sink edge is modeled through a synthesized junction and
/// reported in warnings.
LinkNetwork to_link_network(const ValidatedRawNetwork& net);

} // namespace survnet
