#pragma once

#include "survnet/link_network.hpp"

#include <string>
#include <vector>

namespace survnet {

// Dissolves junctions that join exactly two elements. Permitted fusions:
// H+H, VT+H, VB+H. Weighted pairs never fuse, so a junction joining two
// weighted elements survives. Self-loop H elements are left alone.
// Junctions are visited in table order, repeatedly, until no fusion fires.
// A conduit chain with weighted elements at both ends goes entirely to one
// of them: VT over VB, then the smaller originating element.
// The result is order-independent; the two-argument form fixes a custom
// visiting order and exists so that independence can be checked.
LinkNetwork series_reduce(const LinkNetwork& net);
LinkNetwork series_reduce(const LinkNetwork& net, const std::vector<int>& junction_order);

struct TraversalOptions {
    // When set, a source joins the junctions its VT links attach to, so
    // connectivity may pass through it. Off by default: a source feeds
    // its links but does not bridge them.
    bool source_transit = false;
};

// One VB's private view of the network: every other VB removed, the
// unreachable part dropped, the remainder series-reduced. A sink with
// several attachment points contributes one sub-topology per VB.
struct SinkSubTopology {
    int sink_id = -1;
    int vb_index = -1; // index of the surviving VB in net.elements
    LinkNetwork net;   // element origins refer to the network it was extracted from
};

std::vector<SinkSubTopology> extract_sink_subtopologies(const LinkNetwork& full,
                                                        const TraversalOptions& opt = {});

enum class DedupMode {
    Structural, // shape, weights and shared-source pattern; source and sink names ignored
    Labeled,    // as Structural, but source identities must match too
};

// Machine-stable fingerprint of a sub-topology. Equal keys mean the two
// sub-topologies answer every scenario question identically (under the
// chosen mode), and the orders below line their parts up.
struct CanonicalForm {
    std::string key;
    std::vector<int> element_order; // canonical position -> element index
    std::vector<int> class_order;   // canonical source class -> source id
    bool exhaustive = true;         // false when the symmetry cap was hit
};

CanonicalForm canonical_form(const SinkSubTopology& sub, DedupMode mode);

struct Representative {
    SinkSubTopology sub; // first sub-topology seen with this key
    CanonicalForm form;
};

// How one VB of the full network uses a representative's scenario table.
struct SubAssignment {
    int sink_id = -1;
    int vb_element = -1; // VB's element index in the full network
    double demand = 0.0;
    int representative = -1;
    // Per element of the representative's sub-topology (same indexing as
    // rep.sub.net.elements): the full-network elements whose faults make
    // that element faulty for this assignment.
    std::vector<std::vector<int>> fault_origins;
    // Per canonical source class of the representative: the actual source
    // feeding this assignment's sub-topology.
    std::vector<int> class_sources;
};

struct NetworkMap {
    LinkNetwork full;
    DedupMode mode = DedupMode::Structural;
    TraversalOptions options;
    std::vector<Representative> representatives;
    std::vector<SubAssignment> assignments; // one per VB, in full-network element order
    std::vector<std::string> warnings;
};

NetworkMap map_network(const LinkNetwork& full, DedupMode mode = DedupMode::Structural,
                       const TraversalOptions& opt = {});

} // namespace survnet
