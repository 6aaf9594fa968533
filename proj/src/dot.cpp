#include "survnet/dot.hpp"

#include <cstdio>
#include <sstream>

namespace survnet {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string weight_label(const LinkElement& e) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s\\n%.10g", e.name.c_str(), e.weight);
    return buf;
}

} // namespace

std::string to_dot(const LinkNetwork& net) {
    std::ostringstream out;
    out << "graph " << quoted(net.name) << " {\n";
    out << "  node [fontname=\"Helvetica\"];\n";
    for (const Junction& j : net.junctions)
        out << "  " << quoted(j.name) << " [shape=circle];\n";
    for (const LinkElement& e : net.elements) {
        const std::string jn = quoted(net.junctions[e.attach_a].name);
        if (e.kind == LinkKind::H) {
            if (e.is_self_loop())
                out << "  " << jn << " -- " << jn << " [label=" << quoted(e.name) << "];\n";
            else
                out << "  " << jn << " -- " << quoted(net.junctions[e.attach_b].name)
                    << " [label=" << quoted(e.name) << "];\n";
        } else {
            const char* shape = e.kind == LinkKind::VT ? "box" : "diamond";
            out << "  " << quoted(e.name) << " [shape=" << shape << ", label="
                << quoted(weight_label(e)) << "];\n";
            out << "  " << quoted(e.name) << " -- " << jn << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace survnet
