#include <doctest.h>

#include "survnet/link_network.hpp"
#include "survnet/net_format.hpp"

using namespace survnet;

namespace {

LinkNetwork links_of(const std::string& text) {
    return to_link_network(merge_parallel(validate_raw(parse_network_text(text))));
}

const std::string kMicrogrid = "net microgrid\n"
                               "node 20 subload 60\nnode 27 subload 60\nnode 28 subload 60\n"
                               "node 30 load 60\n"
                               "node 64 gen 100\nnode 76 gen 100\nnode 81 gen 100\n"
                               "edge 1 64 20\nedge 2 20 27\nedge 3 76 27\nedge 4 27 28\n"
                               "edge 5 76 28\nedge 6 81 28\nedge 7 28 30\n";

} // namespace

TEST_CASE("microgrid becomes four VB, four VT and two H elements") {
    LinkNetwork net = links_of(kMicrogrid);
    CHECK(net.name == "microgrid");
    CHECK(net.warnings.empty());
    REQUIRE(net.junctions.size() == 3);
    CHECK(net.junctions[0].name == "J20");
    CHECK(net.junctions[1].name == "J27");
    CHECK(net.junctions[2].name == "J28");

    REQUIRE(net.element_count() == 10);
    CHECK(net.count_kind(LinkKind::VB) == 4);
    CHECK(net.count_kind(LinkKind::VT) == 4);
    CHECK(net.count_kind(LinkKind::H) == 2);

    const char* names[] = {"VB20", "VB27", "VB28", "VB30", "VT64",
                           "VT761", "VT762", "VT81", "H1", "H2"};
    for (int i = 0; i < 10; ++i)
        CHECK(net.elements[i].name == names[i]);

    // sink side
    for (int i = 0; i < 4; ++i) {
        CHECK(net.elements[i].kind == LinkKind::VB);
        CHECK(net.elements[i].weight == doctest::Approx(-60));
    }
    CHECK(net.elements[0].attach_a == 0);
    CHECK(net.elements[1].attach_a == 1);
    CHECK(net.elements[2].attach_a == 2);
    // the tail load collapses onto junction 28 and remembers the chain
    CHECK(net.elements[3].attach_a == 2);
    CHECK(net.elements[3].sink_id == 30);
    CHECK(net.elements[3].provenance == std::vector<RawRef>{edge_ref(7)});
    // the implicit VB of a subload remembers its node instead
    CHECK(net.elements[1].provenance == std::vector<RawRef>{node_ref(27)});

    // source side: generator 76 splits into two VT elements
    CHECK(net.elements[4].source_id == 64);
    CHECK(net.elements[5].source_id == 76);
    CHECK(net.elements[6].source_id == 76);
    CHECK(net.elements[7].source_id == 81);
    CHECK(net.elements[5].attach_a == 1);
    CHECK(net.elements[6].attach_a == 2);
    for (int i = 4; i < 8; ++i)
        CHECK(net.elements[i].weight == doctest::Approx(100));
    CHECK(net.elements[5].provenance == std::vector<RawRef>{edge_ref(3)});
    CHECK(net.elements[6].provenance == std::vector<RawRef>{edge_ref(5)});

    // interconnection links
    CHECK(net.elements[8].attach_a == 0);
    CHECK(net.elements[8].attach_b == 1);
    CHECK(net.elements[9].attach_a == 1);
    CHECK(net.elements[9].attach_b == 2);
    CHECK(net.elements[8].provenance == std::vector<RawRef>{edge_ref(2)});

    // identity origins on a freshly transformed network
    for (int i = 0; i < 10; ++i)
        CHECK(net.elements[i].origins == std::vector<int>{i});

    CHECK(net.element_by_name("VT762") == 6);
    CHECK(net.element_by_name("VT999") == -1);
    CHECK(net.source_capacity(76) == doctest::Approx(100));
    CHECK_THROWS_WITH(net.source_capacity(99), "unknown source id 99");
}

TEST_CASE("incidence lists elements per junction in element order") {
    LinkNetwork net = links_of(kMicrogrid);
    auto inc = net.incidence();
    REQUIRE(inc.size() == 3);
    CHECK(inc[0] == std::vector<int>{0, 4, 8});          // J20: VB20 VT64 H1
    CHECK(inc[1] == std::vector<int>{1, 5, 8, 9});       // J27: VB27 VT761 H1 H2
    CHECK(inc[2] == std::vector<int>{2, 3, 6, 7, 9});    // J28: VB28 VB30 VT762 VT81 H2
}

TEST_CASE("a pure sink absorbs its chain of free interconnections") {
    LinkNetwork net = links_of("net chain\n"
                               "node 1 sub\nnode 9 gen 50\nnode 200 load 10\nnode 300 sub\n"
                               "edge 1 9 1\nedge 2 200 300\nedge 3 300 1\n");
    REQUIRE(net.junctions.size() == 1);
    CHECK(net.junctions[0].name == "J1");
    REQUIRE(net.element_count() == 2);
    CHECK(net.elements[0].name == "VB200");
    CHECK(net.elements[0].attach_a == 0);
    CHECK(net.elements[0].provenance ==
          std::vector<RawRef>{node_ref(300), edge_ref(2), edge_ref(3)});
    CHECK(net.elements[1].name == "VT9");
}

TEST_CASE("a chain interconnection with a third neighbor stays a junction") {
    LinkNetwork net = links_of("net fork\n"
                               "node 1 sub\nnode 9 gen 50\nnode 200 load 10\nnode 300 sub\n"
                               "edge 1 9 1\nedge 2 200 300\nedge 3 300 1\nedge 4 9 300\n");
    // 300 hosts a VT, so the sink chain stops there
    REQUIRE(net.junctions.size() == 2);
    CHECK(net.junctions[1].name == "J300");
    CHECK(net.elements[0].name == "VB200");
    CHECK(net.elements[0].attach_a == 1);
    CHECK(net.elements[0].provenance == std::vector<RawRef>{edge_ref(2)});
    CHECK(net.count_kind(LinkKind::VT) == 2);
    CHECK(net.count_kind(LinkKind::H) == 1);
}

TEST_CASE("a sink attached twice produces one VB per attachment") {
    LinkNetwork net = links_of("net dual\n"
                               "node 1 sub\nnode 2 sub\nnode 9 gen 50\nnode 200 load 10\n"
                               "edge 1 1 2\nedge 2 9 1\nedge 5 9 2\nedge 3 200 1\nedge 4 200 2\n");
    REQUIRE(net.count_kind(LinkKind::VB) == 2);
    CHECK(net.elements[0].name == "VB2001");
    CHECK(net.elements[1].name == "VB2002");
    CHECK(net.elements[0].sink_id == 200);
    CHECK(net.elements[1].sink_id == 200);
    CHECK(net.elements[0].attach_a == 0);
    CHECK(net.elements[1].attach_a == 1);
    CHECK(net.elements[0].weight == net.elements[1].weight);
    CHECK(net.count_kind(LinkKind::H) == 1);
}

TEST_CASE("a second attachment may ride through an absorbed interconnection") {
    LinkNetwork net = links_of("net dual2\n"
                               "node 1 sub\nnode 2 sub\nnode 9 gen 50\nnode 200 load 10\n"
                               "edge 1 1 2\nedge 2 9 1\nedge 3 200 1\nedge 4 200 2\n");
    // node 2 only relays the second attachment, so it dissolves into VB2002
    REQUIRE(net.junctions.size() == 1);
    REQUIRE(net.element_count() == 3);
    CHECK(net.elements[0].name == "VB2001");
    CHECK(net.elements[0].provenance == std::vector<RawRef>{edge_ref(3)});
    CHECK(net.elements[1].name == "VB2002");
    CHECK(net.elements[1].attach_a == 0);
    CHECK(net.elements[1].provenance ==
          std::vector<RawRef>{node_ref(2), edge_ref(1), edge_ref(4)});
    CHECK(net.elements[2].name == "VT9");
}

TEST_CASE("a direct source-sink edge synthesizes a junction and warns") {
    LinkNetwork net = links_of("net pair\n"
                               "node 9 gen 50\nnode 200 load 10\nnode 1 sub\nnode 2 subload 5\n"
                               "edge 4 9 200\nedge 5 9 1\nedge 6 1 2\n");
    REQUIRE(net.warnings.size() == 1);
    CHECK(net.warnings[0] == "isolated source-sink pair: source 9 and sink 200 share edge 4 "
                             "with no interconnection");
    int je = -1;
    for (size_t j = 0; j < net.junctions.size(); ++j)
        if (net.junctions[j].name == "Je4")
            je = static_cast<int>(j);
    REQUIRE(je >= 0);
    CHECK(net.junctions[je].raw_node_id == -1);
    CHECK(net.junctions[je].synth_edge_id == 4);
    int vb = net.element_by_name("VB200");
    REQUIRE(vb >= 0);
    CHECK(net.elements[vb].attach_a == je);
    // the source feeds both the synthesized junction and the real one
    CHECK(net.count_kind(LinkKind::VT) == 2);
    CHECK(net.elements[net.element_by_name("VT91")].source_id == 9);
    CHECK(net.elements[net.element_by_name("VT92")].source_id == 9);
}

TEST_CASE("shapes without a links-only equivalent are rejected") {
    CHECK_THROWS_WITH(links_of("net ss\n"
                               "node 8 gen 50\nnode 9 gen 50\nnode 1 subload 5\n"
                               "edge 1 8 9\nedge 2 8 1\n"),
                      "cannot represent network 'ss' by links:\n"
                      "  edge 1 connects two sources (8, 9)");
    CHECK_THROWS_WITH(links_of("net tt\n"
                               "node 9 gen 50\nnode 200 load 5\nnode 201 load 5\nnode 1 sub\n"
                               "edge 1 200 201\nedge 2 9 1\nedge 3 200 1\nedge 4 201 1\n"),
                      "cannot represent network 'tt' by links:\n"
                      "  edge 1 connects two sinks (200, 201)");
    CHECK_THROWS_WITH(links_of("net iso\n"
                               "node 9 gen 50\nnode 1 subload 5\nnode 2 sub\n"
                               "edge 1 9 1\n"),
                      "cannot represent network 'iso' by links:\n"
                      "  isolated interconnection node 2");
    CHECK_THROWS_WITH(links_of("net na\n"
                               "node 9 gen 50\nnode 1 subload 5\nnode 200 load 5\n"
                               "edge 1 9 1\n"),
                      "sink node 200 has no attachment to the network");
}
