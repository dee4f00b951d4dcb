#include "lansim/traffic.hpp"

#include <algorithm>
#include <cmath>

namespace lansim {

TrafficFabric::TrafficFabric(EventQueue& q, Topology& truth,
                             const RouteTable& routes, const SimConfig& cfg,
                             RecordSink& sink)
    : q_(q), truth_(truth), routes_(routes), cfg_(cfg), sink_(sink),
      rng_(cfg.seed) {
    for (const auto& k : truth_.link_keys())
        usability_[k].entries.push_back({0, truth_.link_usable(k.a, k.b)});
}

double TrafficFabric::draw01() {
    // 53-bit mantissa draw; stable across platforms, unlike
    // uniform_real_distribution.
    return double(rng_() >> 11) * (1.0 / 9007199254740992.0);
}

bool TrafficFabric::UsabilityLog::usable_throughout(int64_t a, int64_t b) const {
    auto it = std::upper_bound(
        entries.begin(), entries.end(), a,
        [](int64_t t, const std::pair<int64_t, bool>& e) { return t < e.first; });
    // Last entry at or before a; history is seeded at t=0, so it exists.
    size_t i = size_t(it - entries.begin()) - 1;
    if (!entries[i].second) return false;
    for (size_t j = i + 1; j < entries.size() && entries[j].first <= b; ++j)
        if (!entries[j].second) return false;
    return true;
}

void TrafficFabric::on_topology_changed(int64_t now) {
    for (auto& [k, log] : usability_) {
        bool usable = truth_.link_usable(k.a, k.b);
        if (usable != log.current()) log.entries.push_back({now, usable});
    }
}

void TrafficFabric::start_flow(const FlowSpec& flow, int64_t end) {
    if (flow.start < end)
        q_.schedule(EventKind::packet_emit, flow.start,
                    [this, flow, end] { emit(flow, end, 0); });
}

void TrafficFabric::emit(const FlowSpec& flow, int64_t end, int64_t k) {
    int64_t now = q_.now();
    int64_t next_t = flow.start + int64_t(std::floor(double(k + 1) / flow.rate));
    if (next_t < end)
        q_.schedule(EventKind::packet_emit, next_t,
                    [this, flow, end, k] { emit(flow, end, k + 1); });

    int64_t pkt = next_packet_++;
    auto it = routes_.find(flow.id);
    const std::optional<Path>& active =
        it != routes_.end() ? it->second.active : std::nullopt;

    LogRecord r;
    r.at = now;
    r.kind = RecordKind::packet_emit;
    r.pkt = pkt;
    r.t0 = now;
    r.flow = flow.id;
    r.text = active ? active->str() : "";
    sink_.push(std::move(r));

    if (!active) {
        lose(pkt, flow.id, now, LossReason::no_route, "", "");
        return;
    }
    process_at_node(pkt, flow.id, std::make_shared<const Path>(*active), 0, now);
}

void TrafficFabric::lose(int64_t pkt, const std::string& flow,
                         int64_t created_at, LossReason why,
                         const std::string& a, const std::string& b) {
    LogRecord r;
    r.at = q_.now();
    r.kind = RecordKind::packet_outcome;
    r.pkt = pkt;
    r.t0 = created_at;
    r.flow = flow;
    r.ok = false;
    r.reason = why;
    r.a = a;
    r.b = b;
    sink_.push(std::move(r));
}

void TrafficFabric::process_at_node(int64_t pkt, const std::string& flow,
                                    std::shared_ptr<const Path> path,
                                    size_t idx, int64_t created_at) {
    const auto& nodes = path->nodes;
    if (idx + 1 == nodes.size()) {
        LogRecord r;
        r.at = q_.now();
        r.kind = RecordKind::packet_outcome;
        r.pkt = pkt;
        r.t0 = created_at;
        r.flow = flow;
        r.ok = true;
        sink_.push(std::move(r));
        return;
    }

    const NodeId& u = nodes[idx];
    const NodeId& v = nodes[idx + 1];
    const Link& l = truth_.link(u, v);
    if (l.state == ElementState::Down) {
        lose(pkt, flow, created_at, LossReason::link_down, l.a, l.b);
        return;
    }
    if (truth_.node(u).state == ElementState::Down) {
        lose(pkt, flow, created_at, LossReason::node_down, u, "");
        return;
    }
    if (truth_.node(v).state == ElementState::Down) {
        lose(pkt, flow, created_at, LossReason::node_down, v, "");
        return;
    }

    int64_t hop = cfg_.per_hop_latency_ms;
    if (l.congestion && q_.now() < l.congestion->until_ms) {
        if (draw01() < l.congestion->p_drop) {
            lose(pkt, flow, created_at, LossReason::congestion, l.a, l.b);
            return;
        }
        hop += l.congestion->extra_delay_ms;
    }

    q_.schedule(EventKind::packet_hop, q_.now() + hop,
                [this, pkt, flow, path = std::move(path), idx, created_at] {
                    // Arrival first: a node that died mid-flight swallows
                    // the packet even if it is the destination.
                    const NodeId& at = path->nodes[idx + 1];
                    if (truth_.node(at).state == ElementState::Down) {
                        lose(pkt, flow, created_at, LossReason::node_down, at, "");
                        return;
                    }
                    process_at_node(pkt, flow, path, idx + 1, created_at);
                });
}

void TrafficFabric::start_probes() {
    for (const auto& k : truth_.link_keys())
        q_.schedule(EventKind::probe_send, 0, [this, k] { send_probe(k, 0); });
}

void TrafficFabric::send_probe(const LinkKey& link, int64_t at) {
    int64_t next = at + cfg_.probe_interval_ms;
    if (next <= cfg_.duration_ms)
        q_.schedule(EventKind::probe_send, next,
                    [this, link, next] { send_probe(link, next); });

    // Echo needs the link usable for the whole out-and-back window; judged
    // at the deadline so faults inside the window are already on record.
    int64_t window_end = at + 2 * cfg_.per_hop_latency_ms;
    q_.schedule(EventKind::probe_deadline, at + cfg_.probe_timeout_ms,
                [this, link, at, window_end] {
                    bool ok = usability_[link].usable_throughout(at, window_end);
                    LogRecord r;
                    r.at = q_.now();
                    r.kind = RecordKind::probe;
                    r.a = link.a;
                    r.b = link.b;
                    r.ok = ok;
                    r.t0 = at;
                    sink_.push(std::move(r));
                    if (on_probe) on_probe(ProbeResult{link, at, ok});
                });
}

} // namespace lansim
