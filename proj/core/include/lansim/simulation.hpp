#pragma once

#include "lansim/failover.hpp"
#include "lansim/log.hpp"
#include "lansim/metrics.hpp"
#include "lansim/routes.hpp"
#include "lansim/scenario.hpp"
#include "lansim/topology.hpp"

#include <map>
#include <vector>

namespace lansim {

struct SimulationResult {
    MetricsReport report;
    std::vector<LogRecord> log;
    RouteTable initial_routes;
    RouteTable final_routes;
    Topology final_topology;
    std::map<NodeId, NodeStatus> statuses; // initial vs final active paths
};

// One full deterministic run: route definition, fault script, traffic,
// probes, controller, metrics. Pure function of the scenario value.
SimulationResult run_scenario(const Scenario& s);

} // namespace lansim
