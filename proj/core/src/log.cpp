#include "lansim/log.hpp"

namespace lansim {

const char* to_string(RecordKind k) {
    switch (k) {
    case RecordKind::fault: return "fault";
    case RecordKind::restore: return "restore";
    case RecordKind::probe: return "probe";
    case RecordKind::detection: return "detection";
    case RecordKind::decision: return "decision";
    case RecordKind::commit: return "commit";
    case RecordKind::unroute: return "unroute";
    case RecordKind::recovery: return "recovery";
    case RecordKind::state_change: return "state";
    case RecordKind::packet_emit: return "emit";
    case RecordKind::packet_outcome: return "packet";
    case RecordKind::run_end: return "run_end";
    }
    return "?";
}

const char* to_string(LossReason r) {
    switch (r) {
    case LossReason::none: return "none";
    case LossReason::no_route: return "no-route";
    case LossReason::link_down: return "link-down";
    case LossReason::node_down: return "node-down";
    case LossReason::congestion: return "congestion";
    }
    return "?";
}

const char* to_string(Decision d) {
    switch (d) {
    case Decision::none: return "none";
    case Decision::backup: return "backup";
    case Decision::recompute: return "recompute";
    case Decision::no_path: return "no-path";
    }
    return "?";
}

} // namespace lansim
