#include "survnet/scenario.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <thread>

namespace survnet {

FullEvaluator::FullEvaluator(const LinkNetwork& net, const TraversalOptions& opt)
    : net_(net), opt_(opt) {
    if (net.elements.size() > 64)
        throw DataError("scenario masks cover at most 64 elements, network '" + net.name +
                        "' has " + std::to_string(net.elements.size()));
    const int nj = static_cast<int>(net.junctions.size());

    std::map<int, double> caps;
    std::map<int, int> source_node;
    for (const LinkElement& e : net.elements)
        if (e.kind == LinkKind::VT)
            caps.emplace(e.source_id, e.weight);
    if (opt.source_transit)
        for (const auto& [id, cap] : caps)
            source_node[id] = nj + extra_++;

    adj_.resize(nj + extra_);
    for (size_t i = 0; i < net.elements.size(); ++i) {
        const LinkElement& e = net.elements[i];
        if (e.kind == LinkKind::H && !e.is_self_loop()) {
            adj_[e.attach_a].push_back({static_cast<int>(i), e.attach_b});
            adj_[e.attach_b].push_back({static_cast<int>(i), e.attach_a});
        } else if (e.kind == LinkKind::VT && opt.source_transit) {
            int sn = source_node[e.source_id];
            adj_[e.attach_a].push_back({static_cast<int>(i), sn});
            adj_[sn].push_back({static_cast<int>(i), e.attach_a});
        }
    }
    for (const auto& [id, cap] : caps) {
        source_caps_.push_back({id, cap});
        std::vector<int> vts;
        for (size_t i = 0; i < net.elements.size(); ++i)
            if (net.elements[i].kind == LinkKind::VT && net.elements[i].source_id == id)
                vts.push_back(static_cast<int>(i));
        source_vts_.push_back(std::move(vts));
    }
    for (size_t i = 0; i < net.elements.size(); ++i)
        if (net.elements[i].kind == LinkKind::VB)
            vbs_.push_back(static_cast<int>(i));
    mark_.assign(nj + extra_, 0);
}

// Marks the junctions the VB's junction can reach over live elements.
void FullEvaluator::sweep(int vb_index, uint64_t faulty) const {
    ++stamp_;
    const LinkElement& vb = net_.elements[vb_index];
    assert(vb.kind == LinkKind::VB);
    if (faulty >> vb_index & 1)
        return;
    std::vector<int> stack{vb.attach_a};
    mark_[vb.attach_a] = stamp_;
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (auto [elem, peer] : adj_[n]) {
            if (faulty >> elem & 1)
                continue;
            if (mark_[peer] != stamp_) {
                mark_[peer] = stamp_;
                stack.push_back(peer);
            }
        }
    }
}

std::vector<int> FullEvaluator::reached_sources(int vb_index, uint64_t faulty) const {
    sweep(vb_index, faulty);
    std::vector<int> out;
    for (size_t s = 0; s < source_caps_.size(); ++s)
        for (int vt : source_vts_[s]) {
            if ((faulty >> vt & 1) || mark_[net_.elements[vt].attach_a] != stamp_)
                continue;
            out.push_back(source_caps_[s].first);
            break;
        }
    return out;
}

double FullEvaluator::delivered(int vb_index, uint64_t faulty) const {
    sweep(vb_index, faulty);
    double total = 0.0;
    for (size_t s = 0; s < source_caps_.size(); ++s)
        for (int vt : source_vts_[s]) {
            if ((faulty >> vt & 1) || mark_[net_.elements[vt].attach_a] != stamp_)
                continue;
            total += source_caps_[s].second;
            break;
        }
    return total;
}

bool FullEvaluator::sink_survives(int sink_id, uint64_t faulty) const {
    bool found = false;
    for (int v : vbs_) {
        const LinkElement& vb = net_.elements[v];
        if (vb.sink_id != sink_id)
            continue;
        found = true;
        if (delivered(v, faulty) >= -vb.weight)
            return true;
    }
    if (!found)
        throw DataError("unknown sink id " + std::to_string(sink_id));
    return false;
}

std::vector<int> FullEvaluator::sink_ids() const {
    std::set<int> ids;
    for (int v : vbs_)
        ids.insert(net_.elements[v].sink_id);
    return {ids.begin(), ids.end()};
}

std::vector<int> reachable_sources(const LinkNetwork& net, int vb_index, uint64_t faulty,
                                   const TraversalOptions& opt) {
    return FullEvaluator(net, opt).reached_sources(vb_index, faulty);
}

uint32_t origin_digest(const std::vector<int>& origins) {
    uint32_t h = 2166136261u;
    for (int o : origins) {
        uint32_t v = static_cast<uint32_t>(o);
        for (int b = 0; b < 4; ++b) {
            h ^= (v >> (8 * b)) & 0xFFu;
            h *= 16777619u;
        }
    }
    return h;
}

namespace {

// SURVNET_THREADS caps the worker count; unset or 0 picks the hardware.
int thread_count_from_env() {
    int n = 0;
    if (const char* s = std::getenv("SURVNET_THREADS"); s && *s)
        n = std::atoi(s);
    if (n <= 0)
        n = static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(n, 1, 64);
}

} // namespace

ScenarioDatabase build_database(const Representative& rep, const TraversalOptions& opt) {
    const LinkNetwork& net = rep.sub.net;
    const int m = static_cast<int>(net.elements.size());
    if (m > ScenarioDatabase::kMaxM)
        throw DataError("sub-topology '" + net.name + "' has " + std::to_string(m) +
                        " elements, scenario tables stop at " +
                        std::to_string(ScenarioDatabase::kMaxM));
    const int nc = static_cast<int>(rep.form.class_order.size());
    if (nc > ScenarioDatabase::kMaxClasses)
        throw DataError("sub-topology '" + net.name + "' has " + std::to_string(nc) +
                        " source classes, the record format stops at " +
                        std::to_string(ScenarioDatabase::kMaxClasses));

    std::map<int, int> class_of_source;
    for (int c = 0; c < nc; ++c)
        class_of_source[rep.form.class_order[c]] = c;

    ScenarioDatabase db;
    db.m = static_cast<uint16_t>(m);
    db.class_count = static_cast<uint16_t>(nc);
    for (const LinkElement& e : net.elements) {
        DatabaseElement de;
        de.kind = e.kind;
        de.weight = e.kind == LinkKind::H ? 0.0 : e.weight;
        if (e.kind == LinkKind::VT)
            de.class_index = static_cast<uint32_t>(class_of_source.at(e.source_id));
        de.origin_digest = origin_digest(e.origins);
        db.elements.push_back(de);
    }

    const uint64_t total = uint64_t(1) << m;
    db.records.assign(total, 0);
    const int vb_index = rep.sub.vb_index;

    auto fill = [&](uint64_t lo, uint64_t hi) {
        FullEvaluator ev(net, opt);
        for (uint64_t k = lo; k < hi; ++k) {
            uint64_t bits = 0;
            for (int src : ev.reached_sources(vb_index, k))
                bits |= uint64_t(1) << class_of_source.at(src);
            db.records[k] = bits;
        }
    };

    const int threads = thread_count_from_env();
    if (threads <= 1 || total < 2048) {
        fill(0, total);
    } else {
        const uint64_t chunk = (total + threads - 1) / threads;
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            uint64_t lo = std::min<uint64_t>(total, uint64_t(t) * chunk);
            uint64_t hi = std::min<uint64_t>(total, lo + chunk);
            if (lo < hi)
                pool.emplace_back(fill, lo, hi);
        }
        for (std::thread& t : pool)
            t.join();
    }
    return db;
}

QueryContext::QueryContext(const NetworkMap& map, std::vector<ScenarioDatabase> tables)
    : map_(map), tables_(std::move(tables)) {
    if (tables_.size() != map_.representatives.size())
        throw DataError("scenario table count does not match the network map");
    if (map_.full.elements.size() > 64)
        throw DataError("scenario masks cover at most 64 elements");
    for (const SubAssignment& as : map_.assignments) {
        const ScenarioDatabase& db = tables_[as.representative];
        if (db.m != as.fault_origins.size())
            throw DataError("scenario table width does not match its sub-topology");
        std::vector<uint64_t> masks(db.m, 0);
        for (size_t i = 0; i < as.fault_origins.size(); ++i)
            for (int o : as.fault_origins[i])
                masks[i] |= uint64_t(1) << o;
        origin_masks_.push_back(std::move(masks));
        std::vector<double> caps;
        for (int src : as.class_sources)
            caps.push_back(map_.full.source_capacity(src));
        class_capacity_.push_back(std::move(caps));
    }
    std::map<int, std::vector<int>> by_sink;
    for (size_t a = 0; a < map_.assignments.size(); ++a)
        by_sink[map_.assignments[a].sink_id].push_back(static_cast<int>(a));
    sinks_.assign(by_sink.begin(), by_sink.end());
}

uint64_t QueryContext::projected_mask(int assignment, uint64_t faulty) const {
    const std::vector<uint64_t>& masks = origin_masks_[assignment];
    uint64_t out = 0;
    for (size_t i = 0; i < masks.size(); ++i)
        if (faulty & masks[i])
            out |= uint64_t(1) << i;
    return out;
}

std::vector<int> QueryContext::assignment_sources(int assignment, uint64_t faulty) const {
    const SubAssignment& as = map_.assignments[assignment];
    uint64_t rec = tables_[as.representative].records[projected_mask(assignment, faulty)];
    std::vector<int> out;
    for (size_t c = 0; c < as.class_sources.size(); ++c)
        if (rec >> c & 1)
            out.push_back(as.class_sources[c]);
    std::sort(out.begin(), out.end());
    return out;
}

double QueryContext::assignment_delivered(int assignment, uint64_t faulty) const {
    const SubAssignment& as = map_.assignments[assignment];
    uint64_t rec = tables_[as.representative].records[projected_mask(assignment, faulty)];
    double total = 0.0;
    const std::vector<double>& caps = class_capacity_[assignment];
    for (size_t c = 0; c < caps.size(); ++c)
        if (rec >> c & 1)
            total += caps[c];
    return total;
}

bool QueryContext::assignment_survives(int assignment, uint64_t faulty) const {
    return assignment_delivered(assignment, faulty) >= map_.assignments[assignment].demand;
}

bool QueryContext::sink_survives(int sink_id, uint64_t faulty) const {
    for (int a : sink_assignments(sink_id))
        if (assignment_survives(a, faulty))
            return true;
    return false;
}

std::vector<int> QueryContext::sink_ids() const {
    std::vector<int> out;
    for (const auto& [id, as] : sinks_)
        out.push_back(id);
    return out;
}

const std::vector<int>& QueryContext::sink_assignments(int sink_id) const {
    for (const auto& [id, as] : sinks_)
        if (id == sink_id)
            return as;
    throw DataError("unknown sink id " + std::to_string(sink_id));
}

namespace {

constexpr int kMaxSumBits = 24;

double single_assignment_survivability(const QueryContext& ctx, int assignment,
                                       const std::vector<double>& availability) {
    const SubAssignment& as = ctx.map().assignments[assignment];
    const ScenarioDatabase& db = ctx.tables()[as.representative];
    const int m = db.m;
    if (m > kMaxSumBits)
        throw DataError("survivability sum over 2^" + std::to_string(m) + " scenarios refused");
    std::vector<double> q(m);
    for (int i = 0; i < m; ++i) {
        double avail = 1.0;
        for (int o : as.fault_origins[i])
            avail *= availability[o];
        q[i] = 1.0 - avail;
    }
    std::vector<double> caps;
    for (int src : as.class_sources)
        caps.push_back(ctx.map().full.source_capacity(src));
    double sum = 0.0;
    for (uint64_t k = 0; k < (uint64_t(1) << m); ++k) {
        double delivered = 0.0;
        uint64_t rec = db.records[k];
        for (size_t c = 0; c < caps.size(); ++c)
            if (rec >> c & 1)
                delivered += caps[c];
        if (delivered < as.demand)
            continue;
        double p = 1.0;
        for (int i = 0; i < m; ++i)
            p *= (k >> i & 1) ? q[i] : 1.0 - q[i];
        sum += p;
    }
    return sum;
}

} // namespace

double sink_survivability(const QueryContext& ctx, int sink_id,
                          const std::vector<double>& availability) {
    if (availability.size() != ctx.map().full.elements.size())
        throw DataError("availability vector does not match the element count");
    for (double p : availability)
        if (!(p >= 0.0 && p <= 1.0))
            throw DataError("availability values must lie in [0, 1]");
    const std::vector<int>& as = ctx.sink_assignments(sink_id);
    if (as.size() == 1)
        return single_assignment_survivability(ctx, as[0], availability);

    // Joint sum over every full-network element any attachment point of
    // the sink depends on.
    std::set<int> relevant;
    for (int a : as)
        for (const auto& origins : ctx.map().assignments[a].fault_origins)
            relevant.insert(origins.begin(), origins.end());
    std::vector<int> r(relevant.begin(), relevant.end());
    if (r.size() > kMaxSumBits)
        throw DataError("joint survivability sum over 2^" + std::to_string(r.size()) +
                        " scenarios refused");
    double sum = 0.0;
    for (uint64_t k = 0; k < (uint64_t(1) << r.size()); ++k) {
        uint64_t faulty = 0;
        double p = 1.0;
        for (size_t i = 0; i < r.size(); ++i) {
            if (k >> i & 1) {
                faulty |= uint64_t(1) << r[i];
                p *= 1.0 - availability[r[i]];
            } else {
                p *= availability[r[i]];
            }
        }
        if (ctx.sink_survives(sink_id, faulty))
            sum += p;
    }
    return sum;
}

ComplexityReport complexity_report(const NetworkMap& m) {
    ComplexityReport r;
    r.full_elements = static_cast<int>(m.full.elements.size());
    if (r.full_elements >= 64)
        throw DataError("scenario count overflows for 64 or more elements");
    r.full_scenarios = uint64_t(1) << r.full_elements;
    for (const Representative& rep : m.representatives) {
        int sm = static_cast<int>(rep.sub.net.elements.size());
        r.sub_m.push_back(sm);
        r.sub_scenarios += uint64_t(1) << sm;
    }
    r.ratio = static_cast<double>(r.full_scenarios) / static_cast<double>(r.sub_scenarios);
    return r;
}

} // namespace survnet
