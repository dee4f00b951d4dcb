#include "lansim/failover.hpp"
#include "lansim/errors.hpp"

#include <algorithm>

namespace lansim {

const char* to_string(ControllerState s) {
    switch (s) {
    case ControllerState::Normal: return "Normal";
    case ControllerState::FaultSuspected: return "FaultSuspected";
    case ControllerState::FaultDetected: return "FaultDetected";
    case ControllerState::Rerouting: return "Rerouting";
    case ControllerState::Recovered: return "Recovered";
    }
    return "?";
}

const char* to_string(NodeStatus s) {
    switch (s) {
    case NodeStatus::Active: return "Active";
    case NodeStatus::Failed: return "Failed";
    case NodeStatus::Rerouted: return "Rerouted";
    }
    return "?";
}

double score_path(const Path& p, const ProbeHistory& history,
                  double max_candidate_cost) {
    double ratio = 1.0;
    for (const auto& k : p.links()) {
        auto it = history.find(k);
        if (it == history.end() || it->second.empty()) continue;
        const auto& w = it->second;
        double ok = double(std::count(w.begin(), w.end(), true));
        ratio = std::min(ratio, ok / double(w.size()));
    }
    double norm = max_candidate_cost > 0 ? p.cost / max_candidate_cost : 0.0;
    return ratio - 0.1 * norm;
}

const Path& select_active_path(const std::string& flow_id,
                               const std::vector<Path>& candidates,
                               const ProbeHistory& history) {
    double max_cost = 0.0;
    for (const auto& c : candidates) max_cost = std::max(max_cost, c.cost);

    std::vector<double> scores;
    scores.reserve(candidates.size());
    for (const auto& c : candidates)
        scores.push_back(score_path(c, history, max_cost));

    bool all_tied = true;
    for (double s : scores)
        if (s != scores[0]) { all_tied = false; break; }

    if (all_tied) {
        // Spread tied flows across the candidates instead of piling every
        // flow onto the first one.
        size_t sum = 0;
        for (unsigned char ch : flow_id) sum += ch;
        return candidates[sum % candidates.size()];
    }
    size_t best = 0;
    for (size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;
    return candidates[best];
}

std::map<NodeId, NodeStatus> classify_node_status(const Topology& topo,
                                                  const RouteTable& before,
                                                  const RouteTable& after) {
    std::map<NodeId, NodeStatus> out;
    for (const auto& id : topo.node_ids()) out[id] = NodeStatus::Active;

    for (const auto& [flow, r_after] : after) {
        if (!r_after.active) continue;
        auto it = before.find(flow);
        const Path* was = it != before.end() && it->second.active
                              ? &*it->second.active
                              : nullptr;
        for (const auto& n : r_after.active->nodes)
            if (!was || !was->contains_node(n)) out[n] = NodeStatus::Rerouted;
    }

    for (const auto& id : topo.node_ids()) {
        if (topo.node(id).state == ElementState::Down) {
            out[id] = NodeStatus::Failed;
            continue;
        }
        bool any_link = false, all_down = true;
        for (const auto& k : topo.link_keys()) {
            if (k.a != id && k.b != id) continue;
            any_link = true;
            if (topo.link(k.a, k.b).state == ElementState::Up) all_down = false;
        }
        if (any_link && all_down) out[id] = NodeStatus::Failed;
    }
    return out;
}

Controller::Controller(EventQueue& q, Topology view, RouteTable& routes,
                       const SimConfig& cfg, RecordSink& sink,
                       std::function<int(const LinkKey&)> fault_of_link)
    : q_(q), view_(std::move(view)), routes_(routes), cfg_(cfg), sink_(sink),
      fault_of_link_(std::move(fault_of_link)) {}

void Controller::set_state(ControllerState s, int64_t at) {
    if (s == state_) return;
    state_ = s;
    LogRecord r;
    r.at = at;
    r.kind = RecordKind::state_change;
    r.text = to_string(s);
    sink_.push(std::move(r));
}

void Controller::observe_probe(const ProbeResult& pr) {
    int64_t at = pr.sent_at + cfg_.probe_timeout_ms;
    auto& window = history_[pr.link];
    window.push_back(pr.ok);
    if (window.size() > 10) window.erase(window.begin());

    bool view_failed =
        view_.link(pr.link.a, pr.link.b).state == ElementState::Down;

    if (pr.ok) {
        misses_[pr.link] = 0;
        if (view_failed) {
            on_repair(pr.link, at);
        } else if (state_ == ControllerState::FaultSuspected) {
            bool all_clear = true;
            for (const auto& [k, n] : misses_)
                if (n > 0) { all_clear = false; break; }
            if (all_clear) set_state(ControllerState::Normal, at);
        }
        return;
    }

    // Misses on a link already marked failed carry no new information.
    if (view_failed) return;

    int n = ++misses_[pr.link];
    if (state_ == ControllerState::Normal && n == 1)
        set_state(ControllerState::FaultSuspected, at);
    if (n == cfg_.miss_threshold) {
        misses_.erase(pr.link); // tracked as view-failed from here on
        on_detection(pr.link, at);
    }
}

int64_t Controller::batch_base(int64_t detected_at) const {
    return std::max(detected_at + cfg_.controller_proc_delay_ms,
                    next_free_slot_);
}

void Controller::on_detection(const LinkKey& link, int64_t at) {
    int fault_id = fault_of_link_(link);
    LogRecord det;
    det.at = at;
    det.kind = RecordKind::detection;
    det.fault_id = fault_id;
    det.a = link.a;
    det.b = link.b;
    sink_.push(std::move(det));

    if (state_ == ControllerState::Normal ||
        state_ == ControllerState::FaultSuspected) {
        set_state(ControllerState::FaultDetected, at);
        set_state(ControllerState::Rerouting, at);
    }

    view_.set_link_state(link.a, link.b, ElementState::Down);

    int64_t base = batch_base(at);
    int64_t i = 0;
    for (auto& [flow_id, route] : routes_) {
        const auto& eff = route.effective();
        if (!eff || !eff->uses_link(link)) continue;
        plan_flow(flow_id, route, fault_id, base + i * cfg_.per_flow_commit_delay_ms);
        ++i;
    }
    if (i > 0) {
        next_free_slot_ = base + i * cfg_.per_flow_commit_delay_ms;
    } else if (outstanding_ == 0 && state_ == ControllerState::Rerouting) {
        // no flow rides this link and nothing is in flight: the reroute
        // phase is vacuously complete
        set_state(ControllerState::Recovered, at);
        set_state(ControllerState::Normal, at);
    }
}

void Controller::plan_flow(const std::string& flow_id, FlowRoute& route,
                           int fault_id, int64_t slot) {
    const NodeId src = route.effective()->nodes.front();
    const NodeId dst = route.effective()->nodes.back();

    // A stale in-flight action for this flow is superseded by this plan.
    if (route.pending_action && q_.cancel(*route.pending_action)) --outstanding_;
    route.pending_action.reset();
    route.planned.reset();

    std::optional<Path> plan;
    Decision how = Decision::no_path;
    if (route.backup) {
        bool healthy = true;
        for (const auto& k : route.backup->links())
            if (!view_.link_usable(k.a, k.b)) { healthy = false; break; }
        if (healthy) {
            plan = route.backup;
            how = Decision::backup;
        }
    }
    if (!plan) {
        try {
            plan = view_.shortest_path(src, dst);
            how = Decision::recompute;
        } catch (const NoPathError&) {
            how = Decision::no_path;
        }
    }

    LogRecord dec;
    dec.at = q_.now();
    dec.kind = RecordKind::decision;
    dec.flow = flow_id;
    dec.fault_id = fault_id;
    dec.decision = how;
    dec.text = plan ? plan->str() : "";
    sink_.push(std::move(dec));

    EventQueue::Handle h;
    if (plan) {
        route.planned = plan;
        h = q_.schedule(EventKind::controller_action, slot,
                        [this, flow_id, fault_id] { fire_commit(flow_id, fault_id); });
    } else {
        h = q_.schedule(EventKind::controller_action, slot,
                        [this, flow_id, fault_id] { fire_unroute(flow_id, fault_id); });
    }
    route.pending_action = h;
    ++outstanding_;
}

void Controller::fire_commit(const std::string& flow_id, int fault_id) {
    FlowRoute& route = routes_.at(flow_id);
    route.active = route.planned;
    route.planned.reset();
    route.pending_action.reset();
    route.last_commit_at = q_.now();

    LogRecord r;
    r.at = q_.now();
    r.kind = RecordKind::commit;
    r.flow = flow_id;
    r.fault_id = fault_id;
    r.text = route.active->str();
    sink_.push(std::move(r));

    if (--outstanding_ == 0 && state_ == ControllerState::Rerouting) {
        set_state(ControllerState::Recovered, q_.now());
        set_state(ControllerState::Normal, q_.now());
    }
}

void Controller::fire_unroute(const std::string& flow_id, int fault_id) {
    FlowRoute& route = routes_.at(flow_id);
    route.active.reset();
    route.planned.reset();
    route.pending_action.reset();

    LogRecord r;
    r.at = q_.now();
    r.kind = RecordKind::unroute;
    r.flow = flow_id;
    r.fault_id = fault_id;
    sink_.push(std::move(r));

    if (--outstanding_ == 0 && state_ == ControllerState::Rerouting) {
        set_state(ControllerState::Recovered, q_.now());
        set_state(ControllerState::Normal, q_.now());
    }
}

void Controller::on_repair(const LinkKey& link, int64_t at) {
    view_.set_link_state(link.a, link.b, ElementState::Up);

    LogRecord r;
    r.at = at;
    r.kind = RecordKind::recovery;
    r.a = link.a;
    r.b = link.b;
    sink_.push(std::move(r));

    // Unrouted flows get another look now that the view gained a link.
    // Recovery commits carry fault id -1: they end an outage, they are not
    // part of any fault's reroute burst.
    int64_t base = batch_base(at);
    int64_t i = 0;
    for (auto& [flow_id, route] : routes_) {
        if (route.active || route.pending_action) continue;
        const NodeId *src = nullptr, *dst = nullptr;
        if (route.primary) {
            src = &route.primary->nodes.front();
            dst = &route.primary->nodes.back();
        } else {
            continue; // never had any route to recover
        }
        std::optional<Path> plan;
        try {
            plan = view_.shortest_path(*src, *dst);
        } catch (const NoPathError&) {
            continue; // still cut off; a later repair may help
        }

        LogRecord dec;
        dec.at = at;
        dec.kind = RecordKind::decision;
        dec.flow = flow_id;
        dec.fault_id = -1;
        dec.decision = Decision::recompute;
        dec.text = plan->str();
        sink_.push(std::move(dec));

        route.planned = plan;
        route.pending_action =
            q_.schedule(EventKind::controller_action,
                        base + i * cfg_.per_flow_commit_delay_ms,
                        [this, flow_id] { fire_commit(flow_id, -1); });
        ++outstanding_;
        ++i;
    }
    if (i > 0) next_free_slot_ = base + i * cfg_.per_flow_commit_delay_ms;
}

} // namespace lansim
