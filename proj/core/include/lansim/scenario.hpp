#pragma once

#include "lansim/topology.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lansim {

struct SimConfig {
    int64_t probe_interval_ms = 25;
    int64_t probe_timeout_ms = 10;
    int miss_threshold = 2;
    int64_t per_hop_latency_ms = 1;
    int64_t controller_proc_delay_ms = 5;
    int64_t per_flow_commit_delay_ms = 2;
    int64_t duration_ms = 10000;
    uint64_t seed = 0;
};

struct FlowSpec {
    std::string id;
    NodeId src, dst;
    double rate = 1.0; // packets per ms
    int64_t start = 0;
    std::optional<int64_t> end; // defaults to run duration when absent
};

enum class FaultKind { link_down, node_down, congestion, restore };

struct FaultSpec {
    FaultKind kind = FaultKind::link_down;
    bool is_link = true; // target shape: node pair vs single node
    NodeId a, b;         // link target (normalized order preserved as given)
    NodeId node;         // node target
    int64_t at = 0;
    // congestion only
    double p_drop = 0.0;
    int64_t extra_delay = 0;
    int64_t duration = 0;
};

struct Scenario {
    std::string name;
    std::vector<NodeSpec> nodes;
    std::vector<LinkSpec> links;
    std::vector<FlowSpec> flows;
    std::vector<FaultSpec> faults;
    SimConfig config;

    Topology make_topology() const { return Topology::build(nodes, links); }
    int64_t flow_end(const FlowSpec& f) const {
        return f.end.value_or(config.duration_ms);
    }
};

// Throws SyntaxError on malformed JSON, ValidationError (aggregated, with
// locations) on semantic problems.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& s);

// The fixed example fabric used by the bundled scenarios: routers R1, R2 and
// switches S1..S6 with unit-weight links.
Scenario canonical_scenario();

const char* to_string(FaultKind k);
const char* to_string(NodeKind k);

} // namespace lansim
