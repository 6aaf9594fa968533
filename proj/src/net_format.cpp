#include "survnet/net_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace survnet {
namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw DataError(origin + ":" + std::to_string(line) + ": " + msg);
}

int parse_int(const std::string& tok, const std::string& origin, int line, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size())
            fail(origin, line, std::string("malformed ") + what + " '" + tok + "'");
        return v;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        fail(origin, line, std::string("malformed ") + what + " '" + tok + "'");
    }
}

double parse_real(const std::string& tok, const std::string& origin, int line, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size())
            fail(origin, line, std::string("malformed ") + what + " '" + tok + "'");
        return v;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        fail(origin, line, std::string("malformed ") + what + " '" + tok + "'");
    }
}

} // namespace

RawNetwork parse_network(std::istream& in, const std::string& origin) {
    RawNetwork net;
    bool have_header = false;
    std::unordered_set<int> node_ids, edge_ids;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);

        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;

        const std::string& kw = tok[0];
        if (kw == "net") {
            if (have_header)
                fail(origin, lineno, "duplicate net header");
            if (tok.size() != 2)
                fail(origin, lineno, "expected: net <name>");
            net.name = tok[1];
            have_header = true;
            continue;
        }
        if (!have_header)
            fail(origin, lineno, "no net header");

        if (kw == "node") {
            if (tok.size() < 3)
                fail(origin, lineno, "expected: node <id> <gen|sub|load|subload> [value]");
            RawNode n;
            n.id = parse_int(tok[1], origin, lineno, "node id");
            if (!node_ids.insert(n.id).second)
                fail(origin, lineno, "duplicate node id " + std::to_string(n.id));
            const std::string& kind = tok[2];
            if (kind == "gen") {
                if (tok.size() != 4)
                    fail(origin, lineno, "expected: node <id> gen <capacity>");
                n.kind = NodeKind::Source;
                n.capacity = parse_real(tok[3], origin, lineno, "capacity");
            } else if (kind == "sub") {
                if (tok.size() != 3)
                    fail(origin, lineno, "expected: node <id> sub");
                n.kind = NodeKind::Interconnection;
            } else if (kind == "load") {
                if (tok.size() != 4)
                    fail(origin, lineno, "expected: node <id> load <demand>");
                n.kind = NodeKind::Sink;
                n.demand = parse_real(tok[3], origin, lineno, "demand");
            } else if (kind == "subload") {
                if (tok.size() != 4)
                    fail(origin, lineno, "expected: node <id> subload <demand>");
                n.kind = NodeKind::InterconnectionWithSink;
                n.demand = parse_real(tok[3], origin, lineno, "demand");
            } else {
                fail(origin, lineno, "unknown node kind '" + kind + "'");
            }
            net.nodes.push_back(n);
        } else if (kw == "edge") {
            if (tok.size() != 4 && tok.size() != 5)
                fail(origin, lineno, "expected: edge <id> <nodeA> <nodeB> [x<multiplicity>]");
            RawEdge e;
            e.id = parse_int(tok[1], origin, lineno, "edge id");
            if (!edge_ids.insert(e.id).second)
                fail(origin, lineno, "duplicate edge id " + std::to_string(e.id));
            e.node_a = parse_int(tok[2], origin, lineno, "endpoint");
            e.node_b = parse_int(tok[3], origin, lineno, "endpoint");
            if (tok.size() == 5) {
                if (tok[4].size() < 2 || tok[4][0] != 'x')
                    fail(origin, lineno, "malformed multiplicity '" + tok[4] + "'");
                try {
                    e.multiplicity = parse_int(tok[4].substr(1), origin, lineno, "multiplicity");
                } catch (const DataError&) {
                    fail(origin, lineno, "malformed multiplicity '" + tok[4] + "'");
                }
                if (e.multiplicity < 1)
                    fail(origin, lineno, "multiplicity must be positive");
            }
            net.edges.push_back(e);
        } else {
            fail(origin, lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_header)
        throw DataError(origin + ": no net header");
    return net;
}

RawNetwork parse_network_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw DataError("cannot open '" + path + "'");
    return parse_network(f, path);
}

RawNetwork parse_network_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    return parse_network(in, origin);
}

void serialize_network(const RawNetwork& net, std::ostream& out) {
    out << "net " << net.name << "\n";
    for (const RawNode& n : net.nodes) {
        out << "node " << n.id << ' ' << to_string(n.kind);
        if (n.kind == NodeKind::Source)
            out << ' ' << n.capacity;
        else if (bears_sink(n.kind))
            out << ' ' << n.demand;
        out << "\n";
    }
    for (const RawEdge& e : net.edges) {
        out << "edge " << e.id << ' ' << e.node_a << ' ' << e.node_b;
        if (e.multiplicity != 1)
            out << " x" << e.multiplicity;
        out << "\n";
    }
}

std::string serialize_network(const RawNetwork& net) {
    std::ostringstream out;
    serialize_network(net, out);
    return out.str();
}

} // namespace survnet
