#include "survnet/types.hpp"

namespace survnet {

const char* to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Source: return "gen";
    case NodeKind::Interconnection: return "sub";
    case NodeKind::Sink: return "load";
    case NodeKind::InterconnectionWithSink: return "subload";
    }
    return "?";
}

const char* to_string(LinkKind k) {
    switch (k) {
    case LinkKind::VB: return "VB";
    case LinkKind::VT: return "VT";
    case LinkKind::H: return "H";
    }
    return "?";
}

std::string to_string(const RawRef& r) {
    return (r.kind == RawRef::Kind::Node ? "node " : "edge ") + std::to_string(r.id);
}

} // namespace survnet
