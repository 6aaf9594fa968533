#include <doctest.h>

#include "survnet/net_format.hpp"

#include <sstream>

using namespace survnet;

TEST_CASE("parses nodes, edges and multiplicities") {
    const std::string text = R"(# leading comment
net demo

node 1 sub
node 2 subload 45.5   # trailing comment
node 3 load 30
node 9 gen 120

edge 1 9 1
edge 2 1 2 x3
edge 3 2 3
)";
    RawNetwork net = parse_network_text(text);
    CHECK(net.name == "demo");
    REQUIRE(net.nodes.size() == 4);
    CHECK(net.nodes[0].kind == NodeKind::Interconnection);
    CHECK(net.nodes[1].kind == NodeKind::InterconnectionWithSink);
    CHECK(net.nodes[1].demand == doctest::Approx(45.5));
    CHECK(net.nodes[2].kind == NodeKind::Sink);
    CHECK(net.nodes[2].demand == doctest::Approx(30));
    CHECK(net.nodes[3].kind == NodeKind::Source);
    CHECK(net.nodes[3].capacity == doctest::Approx(120));
    REQUIRE(net.edges.size() == 3);
    CHECK(net.edges[0].multiplicity == 1);
    CHECK(net.edges[1].multiplicity == 3);
    CHECK(net.edges[1].node_a == 1);
    CHECK(net.edges[1].node_b == 2);
}

TEST_CASE("serialization round-trips") {
    const std::string text = "net rt\nnode 5 gen 80\nnode 6 subload 20\nedge 2 5 6 x2\n";
    RawNetwork net = parse_network_text(text);
    std::string again = serialize_network(net);
    CHECK(again == text);
    RawNetwork net2 = parse_network_text(again);
    CHECK(net2.name == net.name);
    CHECK(net2.nodes.size() == net.nodes.size());
    CHECK(net2.edges[0].multiplicity == 2);
}

TEST_CASE("serializer omits x1 multiplicity") {
    RawNetwork net;
    net.name = "one";
    net.nodes.push_back({1, NodeKind::Source, 10.0, 0.0});
    net.nodes.push_back({2, NodeKind::Sink, 0.0, 5.0});
    net.edges.push_back({1, 1, 2, 1, {}});
    CHECK(serialize_network(net) == "net one\nnode 1 gen 10\nnode 2 load 5\nedge 1 1 2\n");
}

TEST_CASE("reports the origin and line of each error") {
    auto msg = [](const std::string& text) {
        try {
            parse_network_text(text);
        } catch (const DataError& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };

    CHECK(msg("") == "<text>: no net header");
    CHECK(msg("# only comments\n\n") == "<text>: no net header");
    CHECK(msg("node 1 sub\n") == "<text>:1: no net header");
    CHECK(msg("net a b\n") == "<text>:1: expected: net <name>");
    CHECK(msg("net a\nnet b\n") == "<text>:2: duplicate net header");
    CHECK(msg("net a\nnode 1\n") == "<text>:2: expected: node <id> <gen|sub|load|subload> [value]");
    CHECK(msg("net a\nnode 5 gen\n") == "<text>:2: expected: node <id> gen <capacity>");
    CHECK(msg("net a\nnode 5 sub extra\n") == "<text>:2: expected: node <id> sub");
    CHECK(msg("net a\nnode 5 load\n") == "<text>:2: expected: node <id> load <demand>");
    CHECK(msg("net a\nnode 5 subload\n") == "<text>:2: expected: node <id> subload <demand>");
    CHECK(msg("net a\nnode 5 solar 3\n") == "<text>:2: unknown node kind 'solar'");
    CHECK(msg("net a\nnode 2 sub\nnode 2 sub\n") == "<text>:3: duplicate node id 2");
    CHECK(msg("net a\nnode x sub\n") == "<text>:2: malformed node id 'x'");
    CHECK(msg("net a\nnode 5 gen 1q\n") == "<text>:2: malformed capacity '1q'");
    CHECK(msg("net a\nedge 1 2\n") ==
          "<text>:2: expected: edge <id> <nodeA> <nodeB> [x<multiplicity>]");
    CHECK(msg("net a\nedge 1 2 3\nedge 1 2 3\n") == "<text>:3: duplicate edge id 1");
    CHECK(msg("net a\nedge 1 2 3 4\n") == "<text>:2: malformed multiplicity '4'");
    CHECK(msg("net a\nedge 1 2 3 xq\n") == "<text>:2: malformed multiplicity 'xq'");
    CHECK(msg("net a\nedge 1 2 3 x0\n") == "<text>:2: multiplicity must be positive");
    CHECK(msg("net a\nbogus 1\n") == "<text>:2: unknown keyword 'bogus'");
}

TEST_CASE("custom origin appears in messages") {
    CHECK_THROWS_WITH(parse_network_text("net a\nnode 1\n", "grid.net"),
                      "grid.net:2: expected: node <id> <gen|sub|load|subload> [value]");
}

TEST_CASE("missing file") {
    CHECK_THROWS_WITH(parse_network_file("/nonexistent/nowhere.net"),
                      "cannot open '/nonexistent/nowhere.net'");
}
