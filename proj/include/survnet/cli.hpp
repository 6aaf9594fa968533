#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace survnet {

struct RunConfig {
    std::string command; // transform|groups|map|builddb|query|analyze|report|verify
    std::string input;   // network description file
    std::string mode = "structural"; // sub-topology dedup: structural|labeled
    bool source_transit = false;
    std::string out_dir;  // map/builddb output directory
    std::string db_dir;   // query/analyze/verify: load tables instead of building
    std::string dot_path; // transform: also write a DOT rendering
    std::vector<int> sinks;           // restrict query/analyze to these sinks
    std::vector<std::string> faults;  // element names, commas allowed
    double availability = -1.0;       // uniform availability; <0 means unset
    std::string availability_file;    // per-element availability table
    int max_m = 16;                   // verify refuses larger networks
    bool machine = false;             // groups: machine-oriented lines
    bool csv = false;                 // builddb: also write CSV listings
};

// Executes one command; human output on out, diagnostics on err.
// Exit status: 0 success, 1 usage error, 2 data error, 3 verification
// mismatch.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace survnet
