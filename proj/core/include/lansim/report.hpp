#pragma once

#include "lansim/failover.hpp"
#include "lansim/log.hpp"
#include "lansim/metrics.hpp"
#include "lansim/topology.hpp"

#include <map>
#include <string>
#include <vector>

namespace lansim {

// Full report as a JSON object, stable key order, trailing newline.
std::string to_json(const MetricsReport& r);

// test_case,loss_percent,mttr_ms,success_percent with one row per report.
std::string to_csv_header();
std::string to_csv_row(const MetricsReport& r);

// Graphviz export: green Active, red Failed, orange Rerouted; unusable
// links dashed. Node and edge stanzas sorted for stable output.
std::string export_dot(const Topology& topo,
                       const std::map<NodeId, NodeStatus>& statuses);

// One k=v line per record, in stream order.
std::string format_event_log(const std::vector<LogRecord>& records);

} // namespace lansim
