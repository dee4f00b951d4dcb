#pragma once

#include "lansim/engine.hpp"
#include "lansim/topology.hpp"

#include <map>
#include <optional>
#include <string>

namespace lansim {

// Per-flow routing state shared between the controller (writes) and the
// traffic fabric (reads active at each emission).
// pending_action set + planned set   -> a commit to `planned` is scheduled
// pending_action set + planned empty -> an unroute is scheduled
struct FlowRoute {
    std::optional<Path> primary;
    std::optional<Path> backup;
    std::optional<Path> active;
    std::optional<Path> planned;
    std::optional<EventQueue::Handle> pending_action;
    int64_t last_commit_at = -1;

    // What the flow will be running on once in-flight actions land; this is
    // what rerouting decisions must judge.
    const std::optional<Path>& effective() const {
        return pending_action ? planned : active;
    }
};

using RouteTable = std::map<std::string, FlowRoute>;

} // namespace lansim
