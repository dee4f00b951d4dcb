#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lansim {

enum class RecordKind {
    fault,
    restore,
    probe,
    detection,
    decision,
    commit,
    unroute,
    recovery,
    state_change,
    packet_emit,
    packet_outcome,
    run_end,
};

enum class LossReason { none, no_route, link_down, node_down, congestion };

enum class Decision { none, backup, recompute, no_path };

// One flat record shape for the whole run. Unused fields keep their
// defaults; which fields matter depends on kind:
//   fault/restore:   fault_id, a/b or a (node), text = kind detail
//   probe:           a, b, ok, t0 = send time
//   detection:       fault_id, a, b (the failed link in the view)
//   decision:        flow, fault_id, decision, text = planned path
//   commit:          flow, fault_id, text = path now active
//   unroute:         flow, fault_id
//   recovery:        a, b (link repaired in the view), fault_id = -1
//   state_change:    text = new controller state
//   packet_emit:     pkt, flow, text = snapshot path
//   packet_outcome:  pkt, flow, ok, reason, a/b = blame element
//   run_end:         nothing extra
struct LogRecord {
    int64_t at = 0;
    uint64_t idx = 0; // position in the run's record stream
    RecordKind kind = RecordKind::run_end;
    int fault_id = -1;
    bool ok = false;
    LossReason reason = LossReason::none;
    Decision decision = Decision::none;
    int64_t t0 = -1;
    int64_t pkt = -1;
    std::string flow;
    std::string a, b;
    std::string text;
};

const char* to_string(RecordKind k);
const char* to_string(LossReason r);
const char* to_string(Decision d);

struct RecordSink {
    std::vector<LogRecord> records;
    std::function<void(const LogRecord&)> listener;

    void push(LogRecord r) {
        r.idx = records.size();
        records.push_back(std::move(r));
        if (listener) listener(records.back());
    }
};

} // namespace lansim
