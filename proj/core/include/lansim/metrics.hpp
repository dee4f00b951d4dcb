#pragma once

#include "lansim/log.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lansim {

struct FaultRecoveryRecord {
    int fault_id = -1;
    std::string kind;   // link_down / node_down / congestion
    std::string target; // "R1-S2" or "S2"
    int64_t fault_at = 0;
    int64_t detected_at = -1;    // -1: never detected
    int64_t last_commit_at = -1; // last commit or unroute, -1: none
    int64_t affected_flows = 0;
    int64_t rerouted_flows = 0;
    int64_t mttr_ms = 0;
    double success_rate_percent = 100.0; // one decimal, round half up
};

struct MetricsReport {
    std::string scenario;
    uint64_t seed = 0;
    int64_t duration_ms = 0;
    int64_t packets_sent = 0;
    int64_t delivered = 0;
    int64_t lost = 0;
    int64_t in_flight = 0;
    std::map<std::string, int64_t> lost_by_reason; // only nonzero reasons
    double loss_rate_percent = 0.0;                // one decimal
    std::vector<FaultRecoveryRecord> faults;       // by fault id
    int64_t mttr_ms = 0;                           // max over faults
    double success_rate_percent = 100.0; // routed affected / affected, unique flows
};

struct LossRate {
    double percent = 0.0;
    bool empty = false; // no packets sent in the window
};

// 100*num/den to one decimal, round half up, exact in integer arithmetic.
double round1_percent(int64_t num, int64_t den);

// Folds the record stream into counters. Per-packet outcomes and per-flow
// actions count exactly once; replays of the same record are ignored.
class MetricsCollector {
public:
    MetricsCollector(std::string scenario, uint64_t seed, int64_t duration_ms);

    void record(const LogRecord& r);

    LossRate packet_loss_rate(int64_t t0, int64_t t1) const; // by created_at
    int64_t mttr(int fault_id) const;         // needs the fault quiesced
    double success_rate(int fault_id) const;  // one decimal
    MetricsReport report() const;             // needs run end

private:
    struct FaultAcc {
        std::string kind, target;
        int64_t fault_at = 0;
        int64_t detected_at = -1;
        int64_t last_action_at = -1;
        std::set<std::string> affected;
        std::set<std::string> rerouted;
    };
    const FaultAcc& fault_or_throw(int fault_id) const;
    bool quiesced(int fault_id) const;

    std::string scenario_;
    uint64_t seed_;
    int64_t duration_ms_;
    bool run_ended_ = false;

    struct PacketAcc {
        int64_t created_at = -1;
        int outcome = 0; // 0 in flight, 1 delivered, 2 lost
        LossReason reason = LossReason::none;
    };
    std::vector<PacketAcc> packets_; // indexed by packet id
    int64_t sent_ = 0, delivered_ = 0, lost_ = 0;
    std::map<std::string, int64_t> lost_by_reason_;

    std::map<int, FaultAcc> faults_;
    // Latest decision per flow and whether its action has landed; a fault is
    // quiesced when no flow's newest plan still points at it unfinished.
    std::map<std::string, std::pair<int, bool>> latest_plan_;
    // Final routing state per flow touched by any commit/unroute.
    std::map<std::string, bool> finally_routed_;
};

} // namespace lansim
