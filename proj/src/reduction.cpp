#include "survnet/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace survnet {

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<RawRef> sorted_union(const std::vector<RawRef>& a, const std::vector<RawRef>& b) {
    std::vector<RawRef> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct ReduceWork {
    std::vector<LinkElement> elems;
    std::vector<char> elem_alive;
    std::vector<char> junc_alive;
};

// Alive elements incident to junction j; a self-loop H appears twice.
std::vector<int> incident_slots(const ReduceWork& w, int j) {
    std::vector<int> out;
    for (size_t i = 0; i < w.elems.size(); ++i) {
        if (!w.elem_alive[i])
            continue;
        const LinkElement& e = w.elems[i];
        if (e.attach_a == j)
            out.push_back(static_cast<int>(i));
        if (e.kind == LinkKind::H && e.attach_b == j)
            out.push_back(static_cast<int>(i));
    }
    return out;
}

int far_end(const LinkElement& h, int j) {
    assert(h.kind == LinkKind::H);
    return h.attach_a == j ? h.attach_b : h.attach_a;
}

// Fuses the two elements at junction j if the series rules allow it.
bool fuse_at(ReduceWork& w, int j) {
    if (!w.junc_alive[j])
        return false;
    std::vector<int> slots = incident_slots(w, j);
    if (slots.size() != 2 || slots[0] == slots[1])
        return false;
    LinkElement& a = w.elems[slots[0]];
    LinkElement& b = w.elems[slots[1]];
    if (a.kind != LinkKind::H && b.kind != LinkKind::H)
        return false;
    if (a.is_self_loop() || b.is_self_loop())
        return false;
    int keep = slots[0], drop = slots[1];
    if (a.kind == LinkKind::H && b.kind != LinkKind::H)
        std::swap(keep, drop);
    else if (a.kind == LinkKind::H && b.kind == LinkKind::H) {
        // Two conduits fuse into the one with the smaller originating element.
        if (w.elems[drop].origins.front() < w.elems[keep].origins.front())
            std::swap(keep, drop);
    }
    LinkElement& k = w.elems[keep];
    LinkElement& d = w.elems[drop];
    if (k.kind != LinkKind::H) {
        // A conduit chain ending in another weighted element is contested;
        // only the stronger end may absorb it, so every visiting order
        // converges on the same network. VT outranks VB, ties go to the
        // smaller originating element. Junction degrees never change during
        // reduction, so the walk sees the same chain from either end.
        int prev = drop;
        int cur = far_end(d, j);
        while (cur != j) {
            std::vector<int> fs = incident_slots(w, cur);
            if (fs.size() != 2)
                break;
            int next = fs[0] == prev ? fs[1] : fs[0];
            const LinkElement& ne = w.elems[next];
            if (ne.kind == LinkKind::H) {
                prev = next;
                cur = far_end(ne, cur);
                continue;
            }
            bool wins = k.kind != ne.kind ? k.kind == LinkKind::VT
                                          : k.origins.front() < ne.origins.front();
            if (!wins)
                return false;
            break;
        }
    }
    if (k.kind == LinkKind::H) {
        int ka = far_end(k, j);
        int kb = far_end(d, j);
        k.attach_a = std::min(ka, kb);
        k.attach_b = std::max(ka, kb);
    } else {
        k.attach_a = far_end(d, j);
    }
    k.origins = sorted_union(k.origins, d.origins);
    k.provenance = sorted_union(k.provenance, d.provenance);
    w.elem_alive[drop] = 0;
    w.junc_alive[j] = 0;
    return true;
}

LinkNetwork reduce_impl(const LinkNetwork& net, const std::vector<int>& order) {
    ReduceWork w;
    w.elems = net.elements;
    w.elem_alive.assign(w.elems.size(), 1);
    w.junc_alive.assign(net.junctions.size(), 1);
    for (size_t i = 0; i < w.elems.size(); ++i)
        if (w.elems[i].origins.empty())
            w.elems[i].origins = {static_cast<int>(i)};

    bool changed = true;
    while (changed) {
        changed = false;
        for (int j : order)
            changed |= fuse_at(w, j);
    }

    LinkNetwork out;
    out.name = net.name;
    out.warnings = net.warnings;
    std::vector<int> remap(net.junctions.size(), -1);
    for (size_t j = 0; j < net.junctions.size(); ++j) {
        if (!w.junc_alive[j])
            continue;
        remap[j] = static_cast<int>(out.junctions.size());
        out.junctions.push_back(net.junctions[j]);
    }
    for (size_t i = 0; i < w.elems.size(); ++i) {
        if (!w.elem_alive[i])
            continue;
        LinkElement e = std::move(w.elems[i]);
        e.attach_a = remap[e.attach_a];
        if (e.kind == LinkKind::H)
            e.attach_b = remap[e.attach_b];
        assert(e.attach_a >= 0);
        out.elements.push_back(std::move(e));
    }
    return out;
}

} // namespace

LinkNetwork series_reduce(const LinkNetwork& net) {
    std::vector<int> order(net.junctions.size());
    std::iota(order.begin(), order.end(), 0);
    return reduce_impl(net, order);
}

LinkNetwork series_reduce(const LinkNetwork& net, const std::vector<int>& junction_order) {
    return reduce_impl(net, junction_order);
}

std::vector<SinkSubTopology> extract_sink_subtopologies(const LinkNetwork& full,
                                                        const TraversalOptions& opt) {
    const int nj = static_cast<int>(full.junctions.size());

    // Junction adjacency through conduits, plus through sources when they
    // may act as interconnections.
    std::vector<std::vector<int>> adj(nj);
    for (const LinkElement& e : full.elements) {
        if (e.kind != LinkKind::H || e.is_self_loop())
            continue;
        adj[e.attach_a].push_back(e.attach_b);
        adj[e.attach_b].push_back(e.attach_a);
    }
    if (opt.source_transit) {
        std::map<int, std::vector<int>> by_source;
        for (const LinkElement& e : full.elements)
            if (e.kind == LinkKind::VT)
                by_source[e.source_id].push_back(e.attach_a);
        for (auto& [src, js] : by_source)
            for (size_t i = 1; i < js.size(); ++i) {
                adj[js[0]].push_back(js[i]);
                adj[js[i]].push_back(js[0]);
            }
    }

    std::vector<SinkSubTopology> out;
    for (size_t v = 0; v < full.elements.size(); ++v) {
        const LinkElement& vb = full.elements[v];
        if (vb.kind != LinkKind::VB)
            continue;

        std::vector<char> reach(nj, 0);
        std::vector<int> stack{vb.attach_a};
        reach[vb.attach_a] = 1;
        while (!stack.empty()) {
            int j = stack.back();
            stack.pop_back();
            for (int k : adj[j])
                if (!reach[k]) {
                    reach[k] = 1;
                    stack.push_back(k);
                }
        }

        LinkNetwork sub;
        sub.name = full.name + "/" + vb.name;
        std::vector<int> remap(nj, -1);
        for (int j = 0; j < nj; ++j) {
            if (!reach[j])
                continue;
            remap[j] = static_cast<int>(sub.junctions.size());
            sub.junctions.push_back(full.junctions[j]);
        }
        for (size_t i = 0; i < full.elements.size(); ++i) {
            const LinkElement& e = full.elements[i];
            if (e.kind == LinkKind::VB && i != v)
                continue;
            if (!reach[e.attach_a])
                continue;
            LinkElement c = e;
            c.attach_a = remap[c.attach_a];
            if (c.kind == LinkKind::H)
                c.attach_b = remap[c.attach_b];
            sub.elements.push_back(std::move(c));
        }

        SinkSubTopology st;
        st.sink_id = vb.sink_id;
        st.net = series_reduce(sub);
        st.vb_index = -1;
        for (size_t i = 0; i < st.net.elements.size(); ++i)
            if (st.net.elements[i].kind == LinkKind::VB)
                st.vb_index = static_cast<int>(i);
        assert(st.vb_index >= 0);
        out.push_back(std::move(st));
    }
    return out;
}

namespace {

void put_u16(std::string& s, unsigned v) {
    s.push_back(static_cast<char>(v & 0xFF));
    s.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_f64(std::string& s, double v) {
    unsigned char b[8];
    static_assert(sizeof(double) == 8);
    std::memcpy(b, &v, 8);
    s.append(reinterpret_cast<char*>(b), 8);
}

// Fixed-width record per element; lexicographic order of records is the
// element order of the canonical form.
std::string element_tuple(const LinkElement& e, const std::vector<int>& node_pos, int nj,
                          const std::map<int, int>& class_of_source) {
    std::string t;
    t.push_back(static_cast<char>(e.kind == LinkKind::VB ? 0 : e.kind == LinkKind::VT ? 1 : 2));
    put_f64(t, e.kind == LinkKind::H ? 0.0 : e.weight);
    if (e.kind == LinkKind::VB) {
        put_u16(t, node_pos[e.attach_a]);
        put_u16(t, 0xFFFF);
    } else if (e.kind == LinkKind::VT) {
        put_u16(t, node_pos[e.attach_a]);
        put_u16(t, 0x8000u | node_pos[nj + class_of_source.at(e.source_id)]);
    } else {
        int pa = node_pos[e.attach_a], pb = node_pos[e.attach_b];
        put_u16(t, std::min(pa, pb));
        put_u16(t, std::max(pa, pb));
    }
    return t;
}

// Above this many candidate labelings the search falls back to a single
// refined-order labeling. That can only split classes that an exhaustive
// search would merge, never merge ones it would split.
constexpr uint64_t kSymmetryCap = 40320;

} // namespace

CanonicalForm canonical_form(const SinkSubTopology& sub, DedupMode mode) {
    const LinkNetwork& n = sub.net;
    const int nj = static_cast<int>(n.junctions.size());
    const int pin = n.elements[sub.vb_index].attach_a;

    std::vector<int> class_ids;
    for (const LinkElement& e : n.elements)
        if (e.kind == LinkKind::VT)
            class_ids.push_back(e.source_id);
    std::sort(class_ids.begin(), class_ids.end());
    class_ids.erase(std::unique(class_ids.begin(), class_ids.end()), class_ids.end());
    const int nc = static_cast<int>(class_ids.size());
    std::map<int, int> class_of_source;
    for (int c = 0; c < nc; ++c)
        class_of_source[class_ids[c]] = c;
    const int nn = nj + nc;

    // Color refinement over junctions and source-class nodes. Colors are
    // rebuilt from scratch each round, so equal structures get equal
    // color histories regardless of labels.
    std::vector<std::string> color(nn);
    for (int j = 0; j < nj; ++j)
        color[j] = j == pin ? "J*" : "J";
    for (int c = 0; c < nc; ++c) {
        color[nj + c] = "C";
        if (mode == DedupMode::Labeled) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%010d", class_ids[c]);
            color[nj + c] += buf;
        }
    }

    struct Touch {
        std::string token;
        int peer; // -1 for pendant attachments
    };
    std::vector<std::vector<Touch>> touches(nn);
    for (const LinkElement& e : n.elements) {
        std::string tok;
        tok.push_back(e.kind == LinkKind::VB ? 'b' : e.kind == LinkKind::VT ? 't' : 'h');
        put_f64(tok, e.kind == LinkKind::H ? 0.0 : e.weight);
        if (e.kind == LinkKind::VB) {
            touches[e.attach_a].push_back({tok, -1});
        } else if (e.kind == LinkKind::VT) {
            int cn = nj + class_of_source[e.source_id];
            touches[e.attach_a].push_back({tok, cn});
            touches[cn].push_back({tok, e.attach_a});
        } else if (e.is_self_loop()) {
            touches[e.attach_a].push_back({tok + "loop", -1});
        } else {
            touches[e.attach_a].push_back({tok, e.attach_b});
            touches[e.attach_b].push_back({tok, e.attach_a});
        }
    }

    std::vector<int> cid(nn);
    int classes = 0;
    {
        std::map<std::string, int> ids;
        for (int v = 0; v < nn; ++v)
            ids.emplace(color[v], 0);
        for (auto& [k, id] : ids)
            id = classes++;
        for (int v = 0; v < nn; ++v)
            cid[v] = ids[color[v]];
    }
    for (;;) {
        std::vector<std::string> next(nn);
        for (int v = 0; v < nn; ++v) {
            std::vector<std::string> parts;
            for (const Touch& t : touches[v]) {
                std::string p = t.token;
                put_u16(p, t.peer < 0 ? 0xFFFF : static_cast<unsigned>(cid[t.peer]));
                parts.push_back(std::move(p));
            }
            std::sort(parts.begin(), parts.end());
            std::string s;
            put_u16(s, static_cast<unsigned>(cid[v]));
            for (const std::string& p : parts)
                s += p;
            next[v] = std::move(s);
        }
        std::map<std::string, int> ids;
        for (int v = 0; v < nn; ++v)
            ids.emplace(next[v], 0);
        int fresh = 0;
        for (auto& [k, id] : ids)
            id = fresh++;
        if (fresh == classes && fresh > 0) {
            // Stable partition: one extra round cannot split further.
            bool same = true;
            std::vector<int> nid(nn);
            for (int v = 0; v < nn; ++v)
                nid[v] = ids[next[v]];
            for (int a = 0; a < nn && same; ++a)
                for (int b = a + 1; b < nn && same; ++b)
                    if ((cid[a] == cid[b]) != (nid[a] == nid[b]))
                        same = false;
            cid = nid;
            if (same)
                break;
        } else {
            for (int v = 0; v < nn; ++v)
                cid[v] = ids[next[v]];
            classes = fresh;
        }
    }

    // Group nodes by final color; the pinned junction's group leads, the
    // rest follow in color order, junction groups before class groups.
    std::vector<std::vector<int>> groups;
    {
        std::map<std::pair<int, int>, std::vector<int>> by_color; // (kind, color) -> nodes
        for (int v = 0; v < nn; ++v) {
            int kind = v == pin ? 0 : v < nj ? 1 : 2;
            by_color[{kind, cid[v]}].push_back(v);
        }
        for (auto& [k, nodes] : by_color)
            groups.push_back(nodes);
    }

    uint64_t perms = 1;
    bool exhaustive = true;
    for (const auto& g : groups) {
        for (size_t i = 2; i <= g.size(); ++i) {
            perms *= i;
            if (perms > kSymmetryCap) {
                exhaustive = false;
                break;
            }
        }
        if (!exhaustive)
            break;
    }

    auto assemble = [&](const std::vector<std::vector<int>>& gs) {
        // Node -> canonical position, junctions numbered before classes.
        std::vector<int> pos(nn, -1);
        int jpos = 0, cpos = 0;
        for (const auto& g : gs)
            for (int v : g)
                pos[v] = v < nj ? jpos++ : nj + cpos++;
        std::vector<std::string> tuples;
        for (const LinkElement& e : n.elements)
            tuples.push_back(element_tuple(e, pos, nj, class_of_source));
        std::vector<int> order(tuples.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return tuples[a] < tuples[b]; });
        std::string body;
        for (int i : order)
            body += tuples[i];
        return std::tuple<std::string, std::vector<int>, std::vector<int>>(body, order, pos);
    };

    std::string best_body;
    std::vector<int> best_order;
    std::vector<int> best_pos;
    if (!exhaustive) {
        std::tie(best_body, best_order, best_pos) = assemble(groups);
    } else {
        for (auto& g : groups)
            std::sort(g.begin(), g.end());
        std::vector<std::vector<int>> cur = groups;
        // Odometer over the per-group permutations.
        for (;;) {
            auto [body, order, pos] = assemble(cur);
            if (best_body.empty() || body < best_body) {
                best_body = std::move(body);
                best_order = std::move(order);
                best_pos = std::move(pos);
            }
            size_t g = 0;
            while (g < cur.size() && !std::next_permutation(cur[g].begin(), cur[g].end())) {
                cur[g] = groups[g];
                ++g;
            }
            if (g == cur.size())
                break;
        }
    }

    CanonicalForm form;
    form.exhaustive = exhaustive;
    form.key.push_back(mode == DedupMode::Structural ? 'S' : 'L');
    form.key.push_back(exhaustive ? 'x' : 'a');
    put_u16(form.key, static_cast<unsigned>(nj));
    put_u16(form.key, static_cast<unsigned>(nc));
    put_u16(form.key, static_cast<unsigned>(n.elements.size()));
    form.key += best_body;
    form.element_order = best_order;
    form.class_order.resize(nc);
    for (int c = 0; c < nc; ++c)
        form.class_order[best_pos[nj + c] - nj] = class_ids[c];
    if (mode == DedupMode::Labeled) {
        // The body records class positions, not identities; labeled keys
        // must also pin which source feeds each class.
        for (int src : form.class_order) {
            put_u16(form.key, static_cast<unsigned>(src) & 0xFFFFu);
            put_u16(form.key, (static_cast<unsigned>(src) >> 16) & 0xFFFFu);
        }
    }
    return form;
}

NetworkMap map_network(const LinkNetwork& full, DedupMode mode, const TraversalOptions& opt) {
    NetworkMap m;
    m.full = full;
    m.mode = mode;
    m.options = opt;

    std::vector<SinkSubTopology> subs = extract_sink_subtopologies(full, opt);
    std::map<std::string, int> rep_of_key;
    for (SinkSubTopology& sub : subs) {
        CanonicalForm form = canonical_form(sub, mode);

        int vb_element = -1;
        for (int o : sub.net.elements[sub.vb_index].origins)
            if (full.elements[o].kind == LinkKind::VB)
                vb_element = o;
        assert(vb_element >= 0);

        int r;
        auto it = rep_of_key.find(form.key);
        if (it == rep_of_key.end()) {
            r = static_cast<int>(m.representatives.size());
            rep_of_key.emplace(form.key, r);
            m.representatives.push_back({sub, form});
        } else {
            r = it->second;
            // Equal keys always agree on weights; this guards the format
            // of the key itself.
            std::multiset<double> a, b;
            for (const LinkElement& e : m.representatives[r].sub.net.elements)
                a.insert(e.kind == LinkKind::H ? 0.0 : e.weight);
            for (const LinkElement& e : sub.net.elements)
                b.insert(e.kind == LinkKind::H ? 0.0 : e.weight);
            if (a != b)
                m.warnings.push_back("merged sub-topologies for sinks " +
                                     std::to_string(m.representatives[r].sub.sink_id) + " and " +
                                     std::to_string(sub.sink_id) +
                                     " carry different weight multisets");
        }

        const Representative& rep = m.representatives[r];
        SubAssignment as;
        as.sink_id = sub.sink_id;
        as.vb_element = vb_element;
        as.demand = -full.elements[vb_element].weight;
        as.representative = r;
        as.fault_origins.resize(rep.sub.net.elements.size());
        for (size_t p = 0; p < form.element_order.size(); ++p) {
            int rep_e = rep.form.element_order[p];
            int dup_e = form.element_order[p];
            as.fault_origins[rep_e] = sub.net.elements[dup_e].origins;
        }
        as.class_sources = form.class_order;
        m.assignments.push_back(std::move(as));
    }
    return m;
}

} // namespace survnet
