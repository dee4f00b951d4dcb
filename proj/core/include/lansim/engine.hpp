#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace lansim {

enum class EventKind {
    packet_emit,
    packet_hop,
    probe_send,
    probe_deadline,
    fault_apply,
    restore_apply,
    controller_action,
    run_end,
};

struct FiredEvent {
    int64_t time = 0;
    uint64_t seq = 0;
    EventKind kind = EventKind::run_end;
};

// Deterministic event queue. Events fire in (time, seq) order where seq is
// the scheduling order, so same-timestamp events replay identically. Handles
// stay valid until fired or cancelled.
class EventQueue {
public:
    using Handle = uint64_t;

    Handle schedule(EventKind kind, int64_t at, std::function<void()> fn);
    bool cancel(Handle h); // true iff the event was still pending
    bool pending(Handle h) const;
    size_t pending_count() const { return entries_.size(); }

    // Fires everything with time <= t_end; clock lands on t_end.
    std::vector<FiredEvent> run_until(int64_t t_end);

    int64_t now() const { return now_; }

private:
    struct Entry {
        EventKind kind;
        std::function<void()> fn;
    };
    int64_t now_ = 0;
    uint64_t next_seq_ = 0;
    std::map<std::pair<int64_t, uint64_t>, Entry> entries_;
    std::map<Handle, int64_t> time_of_; // for cancel by handle
};

} // namespace lansim
