#pragma once

#include "lansim/engine.hpp"
#include "lansim/log.hpp"
#include "lansim/routes.hpp"
#include "lansim/scenario.hpp"
#include "lansim/topology.hpp"
#include "lansim/traffic.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lansim {

enum class ControllerState { Normal, FaultSuspected, FaultDetected, Rerouting, Recovered };

enum class NodeStatus { Active, Failed, Rerouted };

const char* to_string(ControllerState s);
const char* to_string(NodeStatus s);

using ProbeHistory = std::map<LinkKey, std::vector<bool>>; // last 10 per link

// success_ratio(min over links, never-probed counts as 1) − 0.1 × cost /
// max_candidate_cost. Higher is better.
double score_path(const Path& p, const ProbeHistory& history,
                  double max_candidate_cost);

// Canonically ordered candidates in, one path out. All-tied scores spread
// flows by a byte-sum hash of the flow id; otherwise best score wins, first
// in canonical order on a tie.
const Path& select_active_path(const std::string& flow_id,
                               const std::vector<Path>& candidates,
                               const ProbeHistory& history);

// Failed: down, or every incident link down. Rerouted: up and on some
// flow's after-path but not on that same flow's before-path. Active: rest.
std::map<NodeId, NodeStatus> classify_node_status(const Topology& topo,
                                                  const RouteTable& before,
                                                  const RouteTable& after);

// Probe-driven failure detection and rerouting. Holds its own topology view
// that diverges from ground truth: links go down in the view only after
// miss_threshold consecutive missed probes and come back only after an ok
// probe. Reroutes prefer the predefined backup when the view believes it
// healthy, else Dijkstra on the view's residual graph; flows left with no
// path are unrouted and retried whenever a view link is repaired.
class Controller {
public:
    Controller(EventQueue& q, Topology view, RouteTable& routes,
               const SimConfig& cfg, RecordSink& sink,
               std::function<int(const LinkKey&)> fault_of_link);

    void observe_probe(const ProbeResult& r);

    const Topology& view() const { return view_; }
    ControllerState state() const { return state_; }
    const ProbeHistory& probe_history() const { return history_; }
    int64_t outstanding_actions() const { return outstanding_; }

private:
    void on_detection(const LinkKey& link, int64_t at);
    void on_repair(const LinkKey& link, int64_t at);
    void plan_flow(const std::string& flow_id, FlowRoute& route, int fault_id,
                   int64_t slot);
    void fire_commit(const std::string& flow_id, int fault_id);
    void fire_unroute(const std::string& flow_id, int fault_id);
    void set_state(ControllerState s, int64_t at);
    int64_t batch_base(int64_t detected_at) const;

    EventQueue& q_;
    Topology view_;
    RouteTable& routes_;
    SimConfig cfg_;
    RecordSink& sink_;
    std::function<int(const LinkKey&)> fault_of_link_;

    std::map<LinkKey, int> misses_;
    ProbeHistory history_;
    ControllerState state_ = ControllerState::Normal;
    int64_t next_free_slot_ = 0;
    int64_t outstanding_ = 0;
};

} // namespace lansim
