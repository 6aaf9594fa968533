#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace survnet {

// Node roles in the raw grid description.
enum class NodeKind { Source, Interconnection, Sink, InterconnectionWithSink };

// Link roles in the links-only representation: VT adjacent to a source,
// VB adjacent to a sink, H between interconnections.
enum class LinkKind { VB, VT, H };

const char* to_string(NodeKind k);
const char* to_string(LinkKind k);

inline bool bears_sink(NodeKind k) {
    return k == NodeKind::Sink || k == NodeKind::InterconnectionWithSink;
}

// Reference to a raw element (node or edge) absorbed into a link element.
struct RawRef {
    enum class Kind : std::uint8_t { Node = 0, Edge = 1 };
    Kind kind;
    int id;

    auto operator<=>(const RawRef&) const = default;
};

inline RawRef node_ref(int id) { return RawRef{RawRef::Kind::Node, id}; }
inline RawRef edge_ref(int id) { return RawRef{RawRef::Kind::Edge, id}; }

std::string to_string(const RawRef& r);

// Invalid or inconsistent input data. CLI maps this to exit status 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace survnet
