#include <doctest.h>

#include "survnet/net_format.hpp"
#include "survnet/reduction.hpp"
#include "random_network.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

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

// Structure summary that ignores junction numbering and element order.
std::string fingerprint(const LinkNetwork& net) {
    std::vector<std::string> lines;
    for (const LinkElement& e : net.elements) {
        std::ostringstream os;
        os << to_string(e.kind) << ' ' << e.weight << ' ' << e.name << " o=[";
        for (int o : e.origins)
            os << o << ' ';
        os << "] p=[";
        for (const RawRef& r : e.provenance)
            os << to_string(r) << ' ';
        os << ']';
        lines.push_back(os.str());
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& l : lines)
        out += l + "\n";
    return out;
}

} // namespace

TEST_CASE("a network without degree-two junctions is left alone") {
    LinkNetwork net = links_of(kMicrogrid);
    LinkNetwork red = series_reduce(net);
    CHECK(red.junctions.size() == net.junctions.size());
    REQUIRE(red.element_count() == net.element_count());
    for (int i = 0; i < net.element_count(); ++i) {
        CHECK(red.elements[i].name == net.elements[i].name);
        CHECK(red.elements[i].origins == std::vector<int>{i});
    }
}

TEST_CASE("a feeder chain collapses into one weighted link") {
    LinkNetwork net = links_of("net path\n"
                               "node 1 sub\nnode 2 sub\nnode 3 subload 10\nnode 9 gen 50\n"
                               "edge 1 9 1\nedge 2 1 2\nedge 3 2 3\n");
    REQUIRE(net.element_count() == 4); // VB3 VT9 H1 H2
    LinkNetwork red = series_reduce(net);
    REQUIRE(red.junctions.size() == 1);
    CHECK(red.junctions[0].name == "J3");
    REQUIRE(red.element_count() == 2);
    CHECK(red.elements[0].name == "VB3");
    CHECK(red.elements[0].origins == std::vector<int>{0});
    const LinkElement& vt = red.elements[1];
    CHECK(vt.name == "VT9");
    CHECK(vt.kind == LinkKind::VT);
    CHECK(vt.weight == doctest::Approx(50));
    CHECK(vt.attach_a == 0);
    CHECK(vt.origins == std::vector<int>{1, 2, 3});
    CHECK(vt.provenance == std::vector<RawRef>{edge_ref(1), edge_ref(2), edge_ref(3)});
}

TEST_CASE("two weighted links never fuse") {
    LinkNetwork net = links_of("net wpair\n"
                               "node 1 sub\nnode 9 gen 50\nnode 200 load 10\n"
                               "edge 1 9 1\nedge 2 200 1\n");
    REQUIRE(net.element_count() == 2); // VB200 and VT9 share J1
    LinkNetwork red = series_reduce(net);
    CHECK(red.element_count() == 2);
    CHECK(red.junctions.size() == 1);
}

TEST_CASE("a ring around one junction ends as a self-loop that stays") {
    LinkNetwork net = links_of("net ring\n"
                               "node 1 subload 10\nnode 2 sub\nnode 3 sub\nnode 9 gen 50\n"
                               "edge 1 9 1\nedge 2 1 2\nedge 3 2 3\nedge 4 3 1\n");
    REQUIRE(net.element_count() == 5);
    LinkNetwork red = series_reduce(net);
    REQUIRE(red.junctions.size() == 1);
    CHECK(red.junctions[0].name == "J1");
    REQUIRE(red.element_count() == 3);
    CHECK(red.elements[0].name == "VB1");
    CHECK(red.elements[1].name == "VT9");
    const LinkElement& loop = red.elements[2];
    CHECK(loop.name == "H1"); // conduit with the smallest origin wins
    CHECK(loop.is_self_loop());
    CHECK(loop.origins == std::vector<int>{2, 3, 4});
}

TEST_CASE("the visiting order does not change the outcome") {
    for (uint64_t seed : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}) {
        LinkNetwork net =
            to_link_network(merge_parallel(validate_raw(testing::random_raw_network(seed))));
        LinkNetwork forward = series_reduce(net);

        std::vector<int> order(net.junctions.size());
        std::iota(order.begin(), order.end(), 0);
        std::reverse(order.begin(), order.end());
        LinkNetwork backward = series_reduce(net, order);

        std::mt19937 rng(static_cast<unsigned>(seed));
        std::shuffle(order.begin(), order.end(), rng);
        LinkNetwork shuffled = series_reduce(net, order);

        CAPTURE(seed);
        CHECK(fingerprint(forward) == fingerprint(backward));
        CHECK(fingerprint(forward) == fingerprint(shuffled));
    }
}

TEST_CASE("reduction reaches a fixpoint") {
    for (uint64_t seed : {21, 22, 23, 24}) {
        LinkNetwork net =
            to_link_network(merge_parallel(validate_raw(testing::random_raw_network(seed))));
        LinkNetwork once = series_reduce(net);
        LinkNetwork twice = series_reduce(once);
        CAPTURE(seed);
        CHECK(fingerprint(once) == fingerprint(twice));
    }
}

TEST_CASE("each sink attachment gets its own reduced sub-topology") {
    LinkNetwork net = links_of(kMicrogrid);
    std::vector<SinkSubTopology> subs = extract_sink_subtopologies(net);
    REQUIRE(subs.size() == 4);

    CHECK(subs[0].sink_id == 20);
    CHECK(subs[0].net.name == "microgrid/VB20");
    CHECK(subs[0].net.element_count() == 7);
    // no series reduction applies around sink 20
    CHECK(subs[0].net.elements[subs[0].vb_index].name == "VB20");

    CHECK(subs[1].sink_id == 27);
    REQUIRE(subs[1].net.element_count() == 6);
    const LinkNetwork& s27 = subs[1].net;
    // the feeder through the dropped VB20 junction folds into one VT
    const char* names[] = {"VB27", "VT64", "VT761", "VT762", "VT81", "H2"};
    for (int i = 0; i < 6; ++i)
        CHECK(s27.elements[i].name == names[i]);
    CHECK(s27.elements[1].origins == std::vector<int>{4, 8});
    CHECK(s27.elements[1].weight == doctest::Approx(100));
    CHECK(s27.elements[2].origins == std::vector<int>{5});
    CHECK(s27.elements[5].origins == std::vector<int>{9});
    CHECK(subs[1].vb_index == 0);
    CHECK(s27.elements[0].origins == std::vector<int>{1});

    CHECK(subs[2].sink_id == 28);
    CHECK(subs[2].net.element_count() == 6);
    CHECK(subs[3].sink_id == 30);
    CHECK(subs[3].net.element_count() == 6);
    // the two VBs of junction 28 see the same surroundings
    CHECK(subs[3].net.elements[subs[3].vb_index].origins == std::vector<int>{3});
}

TEST_CASE("source transit widens the reachable part") {
    LinkNetwork net = links_of("net split\n"
                               "node 1 subload 10\nnode 2 subload 10\nnode 9 gen 50\n"
                               "edge 1 9 1\nedge 2 9 2\n");
    REQUIRE(net.element_count() == 4); // VB1 VB2 VT91 VT92, no conduits

    std::vector<SinkSubTopology> off = extract_sink_subtopologies(net);
    REQUIRE(off.size() == 2);
    CHECK(off[0].net.element_count() == 2); // VB1 + VT91 only
    CHECK(off[0].net.junctions.size() == 1);

    std::vector<SinkSubTopology> on = extract_sink_subtopologies(net, {true});
    CHECK(on[0].net.element_count() == 3); // the far VT is reachable through the source
    CHECK(on[0].net.junctions.size() == 2);
}
