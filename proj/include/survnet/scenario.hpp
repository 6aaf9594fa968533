#pragma once

#include "survnet/reduction.hpp"

#include <cstdint>
#include <vector>

namespace survnet {

// Fault scenarios are element bitmasks: bit i set means element i of the
// network in question is faulty. Whole-network masks therefore require at
// most 64 elements; scenario tables are capped far lower.

// Sources whose capacity still reaches the VB's junction under the given
// faults, ascending, empty when the VB itself is faulty.
std::vector<int> reachable_sources(const LinkNetwork& net, int vb_index, uint64_t faulty,
                                   const TraversalOptions& opt = {});

// Graph-search evaluator over a full network, built once per network so
// repeated scenario sweeps stay cheap. Works element by element; it never
// consults scenario tables, which makes it a cross-check for them.
class FullEvaluator {
public:
    explicit FullEvaluator(const LinkNetwork& net, const TraversalOptions& opt = {});

    std::vector<int> reached_sources(int vb_index, uint64_t faulty) const;
    double delivered(int vb_index, uint64_t faulty) const;
    bool sink_survives(int sink_id, uint64_t faulty) const;
    std::vector<int> sink_ids() const;

private:
    void sweep(int vb_index, uint64_t faulty) const;

    const LinkNetwork& net_;
    TraversalOptions opt_;
    int extra_ = 0;                            // transit nodes appended after junctions
    std::vector<std::vector<std::pair<int, int>>> adj_; // node -> (element, peer node)
    std::vector<std::pair<int, double>> source_caps_;   // ascending source id
    std::vector<std::vector<int>> source_vts_;          // VT elements per source
    std::vector<int> vbs_;                              // VB element indices
    mutable std::vector<int> mark_;
    mutable int stamp_ = 0;
};

struct DatabaseElement {
    LinkKind kind = LinkKind::H;
    double weight = 0.0;             // 0 for H
    uint32_t class_index = 0xFFFFFFFFu; // canonical source class; none for VB and H
    uint32_t origin_digest = 0;      // digest of the element's origin set
};

// Exhaustive scenario table of one representative sub-topology. Record k
// holds the source classes reachable under fault mask k.
struct ScenarioDatabase {
    uint16_t m = 0;
    uint16_t class_count = 0;
    std::vector<DatabaseElement> elements; // bit order of the masks
    std::vector<uint64_t> records;         // 1 << m entries

    static constexpr int kMaxM = 30;
    static constexpr int kMaxClasses = 64;
};

uint32_t origin_digest(const std::vector<int>& origins);

// Fills the table by evaluating every mask. Honors SURVNET_THREADS (default
// 1); the result is identical bytes for any thread count.
ScenarioDatabase build_database(const Representative& rep, const TraversalOptions& opt = {});

// Answers scenario questions about the full network through the per-sink
// assignments and their scenario tables.
class QueryContext {
public:
    QueryContext(const NetworkMap& map, std::vector<ScenarioDatabase> tables);

    const NetworkMap& map() const { return map_; }
    const std::vector<ScenarioDatabase>& tables() const { return tables_; }

    // faulty is a mask over map().full.elements
    uint64_t projected_mask(int assignment, uint64_t faulty) const;
    std::vector<int> assignment_sources(int assignment, uint64_t faulty) const;
    double assignment_delivered(int assignment, uint64_t faulty) const;
    bool assignment_survives(int assignment, uint64_t faulty) const;
    bool sink_survives(int sink_id, uint64_t faulty) const;
    std::vector<int> sink_ids() const;
    const std::vector<int>& sink_assignments(int sink_id) const;

private:
    NetworkMap map_;
    std::vector<ScenarioDatabase> tables_;
    std::vector<std::vector<uint64_t>> origin_masks_;   // per assignment, per table bit
    std::vector<std::vector<double>> class_capacity_;   // per assignment, per class
    std::vector<std::pair<int, std::vector<int>>> sinks_; // sink id -> assignment indices
};

// Probability that the sink's demand is met when element i of the full
// network is independently available with probability availability[i].
// Exact summation over the relevant fault space.
double sink_survivability(const QueryContext& ctx, int sink_id,
                          const std::vector<double>& availability);

struct ComplexityReport {
    int full_elements = 0;       // M
    uint64_t full_scenarios = 0; // 2^M
    std::vector<int> sub_m;      // m per representative
    uint64_t sub_scenarios = 0;  // sum of 2^m
    double ratio = 0.0;          // full_scenarios / sub_scenarios
};

ComplexityReport complexity_report(const NetworkMap& m);

} // namespace survnet
