#include "survnet/cli.hpp"

#include "survnet/database_io.hpp"
#include "survnet/dot.hpp"
#include "survnet/grouping.hpp"
#include "survnet/net_format.hpp"
#include "survnet/raw_network.hpp"
#include "survnet/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace survnet {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string id_set(const std::vector<int>& ids) {
    std::string s = "{";
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(ids[i]);
    }
    return s + "}";
}

std::string joined_numbers(const std::vector<int>& ns) {
    std::string s;
    for (size_t i = 0; i < ns.size(); ++i) {
        if (i) {
            if (i + 1 == ns.size())
                s += ns.size() == 2 ? " and " : ", and ";
            else
                s += ", ";
        }
        s += std::to_string(ns[i]);
    }
    return s;
}

DedupMode parse_mode(const std::string& s) {
    if (s == "structural")
        return DedupMode::Structural;
    if (s == "labeled")
        return DedupMode::Labeled;
    throw UsageError("unknown dedup mode '" + s + "' (expected structural or labeled)");
}

ValidatedRawNetwork load_raw(const std::string& path) {
    RawNetwork raw = parse_network_file(path);
    return merge_parallel(validate_raw(std::move(raw)));
}

LinkNetwork load_links(const std::string& path, std::ostream& err) {
    LinkNetwork net = to_link_network(load_raw(path));
    for (const std::string& w : net.warnings)
        err << "warning: " << w << "\n";
    return net;
}

std::string provenance_list(const LinkElement& e) {
    std::string s;
    for (size_t i = 0; i < e.provenance.size(); ++i) {
        if (i)
            s += ", ";
        s += to_string(e.provenance[i]);
    }
    return s;
}

uint64_t fault_mask(const LinkNetwork& net, const std::vector<std::string>& faults) {
    uint64_t mask = 0;
    for (const std::string& group : faults) {
        std::stringstream ss(group);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (name.empty())
                continue;
            int idx = net.element_by_name(name);
            if (idx < 0)
                throw DataError("unknown element '" + name + "'");
            mask |= uint64_t(1) << idx;
        }
    }
    return mask;
}

std::vector<double> load_availability(const RunConfig& cfg, const LinkNetwork& net) {
    const size_t n = net.elements.size();
    if (cfg.availability >= 0.0 && !cfg.availability_file.empty())
        throw UsageError("give either a uniform availability or a file, not both");
    if (cfg.availability >= 0.0) {
        if (cfg.availability > 1.0)
            throw DataError("availability must lie in [0, 1]");
        return std::vector<double>(n, cfg.availability);
    }
    if (cfg.availability_file.empty())
        throw UsageError("analyze needs --availability or --availability-file");

    std::ifstream in(cfg.availability_file);
    if (!in)
        throw DataError("cannot read " + cfg.availability_file);
    std::vector<double> values(n, -1.0);
    double fallback = -1.0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string name;
        double p;
        if (!(ls >> name))
            continue;
        if (!(ls >> p) || !(p >= 0.0 && p <= 1.0))
            throw DataError(cfg.availability_file + ":" + std::to_string(lineno) +
                            ": expected '<element> <probability in [0,1]>'");
        if (name == "*") {
            fallback = p;
        } else {
            int idx = net.element_by_name(name);
            if (idx < 0)
                throw DataError(cfg.availability_file + ":" + std::to_string(lineno) +
                                ": unknown element '" + name + "'");
            values[idx] = p;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (values[i] < 0.0)
            values[i] = fallback;
        if (values[i] < 0.0)
            throw DataError("no availability given for element '" + net.elements[i].name +
                            "' and no '*' default");
    }
    return values;
}

std::vector<int> selected_sinks(const RunConfig& cfg, const QueryContext& ctx) {
    if (cfg.sinks.empty())
        return ctx.sink_ids();
    std::vector<int> out = cfg.sinks;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (int s : out)
        ctx.sink_assignments(s); // throws on unknown ids
    return out;
}

// Builds tables for every representative, or loads them from db_dir and
// checks they belong to this map.
std::vector<ScenarioDatabase> obtain_tables(const NetworkMap& map, const RunConfig& cfg) {
    std::vector<ScenarioDatabase> tables;
    for (size_t r = 0; r < map.representatives.size(); ++r) {
        if (cfg.db_dir.empty()) {
            tables.push_back(build_database(map.representatives[r], map.options));
        } else {
            std::string path = cfg.db_dir + "/sub" + std::to_string(r) + ".svdb";
            ScenarioDatabase db = read_database_file(path);
            if (!database_matches(db, map.representatives[r]))
                throw DataError(path + " does not describe this network's sub-topology " +
                                std::to_string(r));
            tables.push_back(std::move(db));
        }
    }
    return tables;
}

int cmd_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LinkNetwork net = load_links(cfg.input, err);
    out << "network " << net.name << "\n";
    out << "junctions: " << net.junctions.size() << "\n";
    out << "elements: " << net.element_count() << " (" << net.count_kind(LinkKind::VB) << " VB, "
        << net.count_kind(LinkKind::VT) << " VT, " << net.count_kind(LinkKind::H) << " H)\n";
    for (const LinkElement& e : net.elements) {
        out << "  " << e.name;
        if (e.kind == LinkKind::H) {
            out << " @ " << net.junctions[e.attach_a].name << "--"
                << net.junctions[e.attach_b].name;
        } else {
            out << " w=" << num(e.weight) << " @ " << net.junctions[e.attach_a].name;
        }
        if (!e.provenance.empty())
            out << " [" << provenance_list(e) << "]";
        out << "\n";
    }
    if (!cfg.dot_path.empty()) {
        std::ofstream f(cfg.dot_path);
        if (!f)
            throw DataError("cannot write " + cfg.dot_path);
        f << to_dot(net);
    }
    return 0;
}

int cmd_groups(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    GroupingResult r = group_network(load_raw(cfg.input));
    if (cfg.machine) {
        for (const Group& g : r.groups)
            out << "group " << g.number << ": sinks=" << id_set(g.sinks)
                << " gens=" << id_set(g.sources) << "\n";
        for (const auto& [src, groups] : r.shared_sources) {
            out << "shared " << src << ": groups=";
            for (size_t i = 0; i < groups.size(); ++i)
                out << (i ? "," : "") << groups[i];
            out << "\n";
        }
        for (int src : r.unconnected_sources)
            out << "unconnected " << src << "\n";
        return 0;
    }
    for (size_t i = 0; i < r.groups.size(); ++i) {
        const Group& g = r.groups[i];
        if (i)
            out << "\n";
        out << "Group " << g.number << "\n";
        for (int sink : g.sinks)
            out << sink << ": " << id_set(g.sources) << "\n";
        if (g.sinks.empty())
            out << "(no sinks: nodes " << id_set(g.members) << ")\n";
    }
    for (const auto& [src, groups] : r.shared_sources)
        out << "groups " << joined_numbers(groups) << " are connected by generator " << src
            << "\n";
    for (int src : r.unconnected_sources)
        out << "generator " << src << " has no connections\n";
    return 0;
}

int cmd_map(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LinkNetwork net = load_links(cfg.input, err);
    NetworkMap m = map_network(net, parse_mode(cfg.mode), {cfg.source_transit});
    for (const std::string& w : m.warnings)
        err << "warning: " << w << "\n";
    out << "mode: " << cfg.mode << (cfg.source_transit ? " (source transit)" : "") << "\n";
    out << "sub-topologies: " << m.representatives.size() << "\n";
    for (size_t r = 0; r < m.representatives.size(); ++r) {
        const Representative& rep = m.representatives[r];
        std::vector<int> sinks;
        for (const SubAssignment& as : m.assignments)
            if (as.representative == static_cast<int>(r))
                sinks.push_back(as.sink_id);
        out << "sub " << r << ": m=" << rep.sub.net.elements.size()
            << " classes=" << rep.form.class_order.size() << " sinks=" << id_set(sinks) << "\n";
    }
    for (const SubAssignment& as : m.assignments)
        out << "sink " << as.sink_id << " (" << m.full.elements[as.vb_element].name
            << ") -> sub " << as.representative << "\n";
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        {
            std::ofstream f(cfg.out_dir + "/full.dot");
            f << to_dot(m.full);
        }
        for (size_t r = 0; r < m.representatives.size(); ++r) {
            std::ofstream f(cfg.out_dir + "/sub" + std::to_string(r) + ".dot");
            f << to_dot(m.representatives[r].sub.net);
        }
    }
    return 0;
}

int cmd_builddb(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.out_dir.empty())
        throw UsageError("builddb needs --out <dir>");
    LinkNetwork net = load_links(cfg.input, err);
    NetworkMap m = map_network(net, parse_mode(cfg.mode), {cfg.source_transit});
    std::filesystem::create_directories(cfg.out_dir);
    for (size_t r = 0; r < m.representatives.size(); ++r) {
        ScenarioDatabase db = build_database(m.representatives[r], m.options);
        std::string path = cfg.out_dir + "/sub" + std::to_string(r) + ".svdb";
        write_database_file(db, path);
        out << "sub " << r << ": m=" << db.m << " records=" << db.records.size() << " -> "
            << path << "\n";
        if (cfg.csv) {
            std::ofstream f(cfg.out_dir + "/sub" + std::to_string(r) + ".csv");
            if (!f)
                throw DataError("cannot write CSV for sub-topology " + std::to_string(r));
            export_database_csv(db, f);
        }
    }
    return 0;
}

int cmd_query(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LinkNetwork net = load_links(cfg.input, err);
    NetworkMap m = map_network(net, parse_mode(cfg.mode), {cfg.source_transit});
    QueryContext ctx(m, obtain_tables(m, cfg));
    uint64_t faulty = fault_mask(net, cfg.faults);
    for (int sink : selected_sinks(cfg, ctx)) {
        const std::vector<int>& as = ctx.sink_assignments(sink);
        if (as.size() == 1) {
            int a = as[0];
            out << "sink " << sink << ": connected=" << id_set(ctx.assignment_sources(a, faulty))
                << " delivered=" << num(ctx.assignment_delivered(a, faulty))
                << " demand=" << num(ctx.map().assignments[a].demand) << " -> "
                << (ctx.sink_survives(sink, faulty) ? "survives" : "fails") << "\n";
        } else {
            out << "sink " << sink << ":\n";
            for (int a : as)
                out << "  " << m.full.elements[m.assignments[a].vb_element].name
                    << ": connected=" << id_set(ctx.assignment_sources(a, faulty))
                    << " delivered=" << num(ctx.assignment_delivered(a, faulty)) << "\n";
            out << "  demand=" << num(m.assignments[as[0]].demand) << " -> "
                << (ctx.sink_survives(sink, faulty) ? "survives" : "fails") << "\n";
        }
    }
    return 0;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LinkNetwork net = load_links(cfg.input, err);
    NetworkMap m = map_network(net, parse_mode(cfg.mode), {cfg.source_transit});
    QueryContext ctx(m, obtain_tables(m, cfg));
    std::vector<double> avail = load_availability(cfg, net);
    for (int sink : selected_sinks(cfg, ctx)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", sink_survivability(ctx, sink, avail));
        out << "sink " << sink << ": survivability=" << buf << "\n";
    }
    return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LinkNetwork net = load_links(cfg.input, err);
    NetworkMap m = map_network(net, parse_mode(cfg.mode), {cfg.source_transit});
    ComplexityReport r = complexity_report(m);
    char ratio[32];
    std::snprintf(ratio, sizeof(ratio), "%.2f", r.ratio);
    out << "M=" << r.full_elements << "  2^M=" << r.full_scenarios
        << "  subs=" << r.sub_m.size() << "  sum=" << r.sub_scenarios << "  ratio=" << ratio
        << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LinkNetwork net = load_links(cfg.input, err);
    const int mtotal = net.element_count();
    if (mtotal > cfg.max_m)
        throw DataError("verify sweeps 2^" + std::to_string(mtotal) +
                        " scenarios; refusing above 2^" + std::to_string(cfg.max_m) +
                        " (raise --max-m to override)");
    NetworkMap m = map_network(net, parse_mode(cfg.mode), {cfg.source_transit});
    QueryContext ctx(m, obtain_tables(m, cfg));
    FullEvaluator oracle(net, m.options);
    std::vector<int> sinks = ctx.sink_ids();

    uint64_t mismatches = 0;
    const uint64_t total = uint64_t(1) << mtotal;
    for (uint64_t mask = 0; mask < total; ++mask) {
        for (size_t a = 0; a < m.assignments.size(); ++a) {
            const SubAssignment& as = m.assignments[a];
            std::vector<int> got = ctx.assignment_sources(static_cast<int>(a), mask);
            std::vector<int> want = oracle.reached_sources(as.vb_element, mask);
            if (got != want) {
                if (++mismatches <= 5)
                    err << "mismatch: scenario " << mask << " sink " << as.sink_id
                        << ": tables say " << id_set(got) << ", search says " << id_set(want)
                        << "\n";
            }
        }
        for (int s : sinks)
            if (ctx.sink_survives(s, mask) != oracle.sink_survives(s, mask)) {
                if (++mismatches <= 5)
                    err << "mismatch: scenario " << mask << " sink " << s << " verdict differs\n";
            }
    }
    out << total << " scenarios x " << sinks.size() << " sinks: ";
    if (mismatches == 0) {
        out << "all match\n";
        return 0;
    }
    out << mismatches << " mismatches\n";
    return 3;
}

} // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.input.empty())
            throw UsageError("no input network file given");
        if (cfg.command == "transform")
            return cmd_transform(cfg, out, err);
        if (cfg.command == "groups")
            return cmd_groups(cfg, out, err);
        if (cfg.command == "map")
            return cmd_map(cfg, out, err);
        if (cfg.command == "builddb")
            return cmd_builddb(cfg, out, err);
        if (cfg.command == "query")
            return cmd_query(cfg, out, err);
        if (cfg.command == "analyze")
            return cmd_analyze(cfg, out, err);
        if (cfg.command == "report")
            return cmd_report(cfg, out, err);
        if (cfg.command == "verify")
            return cmd_verify(cfg, out, err);
        throw UsageError("unknown command '" + cfg.command + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace survnet
