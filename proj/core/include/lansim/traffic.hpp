#pragma once

#include "lansim/engine.hpp"
#include "lansim/log.hpp"
#include "lansim/routes.hpp"
#include "lansim/scenario.hpp"
#include "lansim/topology.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>

namespace lansim {

struct ProbeResult {
    LinkKey link;
    int64_t sent_at = 0;
    bool ok = false; // missed = no echo by sent_at + probe_timeout
};

// Packet sources, hop-by-hop forwarding against ground truth, and the
// per-link health probes. Paths are snapshotted at emission; route changes
// never redirect packets already in flight.
class TrafficFabric {
public:
    TrafficFabric(EventQueue& q, Topology& truth, const RouteTable& routes,
                  const SimConfig& cfg, RecordSink& sink);

    // Emission every 1/rate ms from start while t < end.
    void start_flow(const FlowSpec& flow, int64_t end);

    // One probe per link every probe_interval, first at t=0. Results reach
    // on_probe at sent + probe_timeout. Probes ride out congestion; they
    // miss only on genuine unusability anywhere in the round trip.
    void start_probes();

    // Fault injection hook: re-reads link usability from ground truth and
    // extends the per-link history probes are judged against.
    void on_topology_changed(int64_t now);

    std::function<void(const ProbeResult&)> on_probe;

    int64_t packets_emitted() const { return next_packet_; }

private:
    struct UsabilityLog {
        // (time, usable) transitions; later entries win at equal times.
        std::vector<std::pair<int64_t, bool>> entries;
        bool current() const { return entries.back().second; }
        bool usable_throughout(int64_t a, int64_t b) const;
    };

    void emit(const FlowSpec& flow, int64_t end, int64_t k);
    void process_at_node(int64_t pkt, const std::string& flow,
                         std::shared_ptr<const Path> path, size_t idx,
                         int64_t created_at);
    void send_probe(const LinkKey& link, int64_t at);
    void lose(int64_t pkt, const std::string& flow, int64_t created_at,
              LossReason why, const std::string& a, const std::string& b);

    EventQueue& q_;
    Topology& truth_;
    const RouteTable& routes_;
    SimConfig cfg_;
    RecordSink& sink_;
    std::mt19937_64 rng_;
    std::map<LinkKey, UsabilityLog> usability_;
    int64_t next_packet_ = 0;

    double draw01(); // uniform in [0,1), 53-bit
};

} // namespace lansim
