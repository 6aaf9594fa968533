#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "survnet/types.hpp"

namespace survnet {

struct RawNode {
    int id = 0; // external id, positive, unique
    NodeKind kind = NodeKind::Interconnection;
    double capacity = 0.0; // Source only
    double demand = 0.0;   // Sink / InterconnectionWithSink only
};

struct RawEdge {
    int id = 0;
    int node_a = 0;
    int node_b = 0;
    int multiplicity = 1;          // co-located parallel lines
    std::vector<int> merged_ids{}; // edge ids folded in by merge_parallel
};

struct RawNetwork {
    std::string name;
    std::vector<RawNode> nodes;
    std::vector<RawEdge> edges;
};

/// A RawNetwork whose invariants have been checked, with dense node/edge
/// indices retained alongside the external ids.
class ValidatedRawNetwork {
public:
    const RawNetwork& raw() const { return net_; }
    const std::string& name() const { return net_.name; }
    const std::vector<RawNode>& nodes() const { return net_.nodes; }
    const std::vector<RawEdge>& edges() const { return net_.edges; }

    int node_index(int external_id) const;     // -1 if unknown
    int edge_index(int external_id) const;     // -1 if unknown
    const RawNode& node(int external_id) const;

    /// Dense edge indices incident to the node at dense index `ni`.
    const std::vector<int>& incident_edges(int ni) const { return incidence_[ni]; }

    friend ValidatedRawNetwork validate_raw(RawNetwork net);
    friend ValidatedRawNetwork merge_parallel(const ValidatedRawNetwork& net);

private:
    ValidatedRawNetwork() = default;
    void rebuild_indices();

    RawNetwork net_;
    std::unordered_map<int, int> node_idx_;
    std::unordered_map<int, int> edge_idx_;
    std::vector<std::vector<int>> incidence_;
};

/// Checks all RawNetwork invariants: unique positive ids, resolvable
/// endpoints, no self-loops, capacity/demand on the right node kinds,
/// at least one source and one sink-bearing node. Throws DataError
/// listing every violation found.
ValidatedRawNetwork validate_raw(RawNetwork net);

/// Collapses co-located parallel lines: for every unordered endpoint pair
/// all edges become a single edge of multiplicity 1 whose merged_ids
/// record the folded edge ids. Idempotent.
ValidatedRawNetwork merge_parallel(const ValidatedRawNetwork& net);

} // namespace survnet
