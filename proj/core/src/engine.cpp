#include "lansim/engine.hpp"
#include "lansim/errors.hpp"

namespace lansim {

EventQueue::Handle EventQueue::schedule(EventKind kind, int64_t at,
                                        std::function<void()> fn) {
    if (at < now_) throw ScheduleInPastError(at, now_);
    Handle h = next_seq_++;
    entries_.emplace(std::make_pair(at, h), Entry{kind, std::move(fn)});
    time_of_.emplace(h, at);
    return h;
}

bool EventQueue::cancel(Handle h) {
    auto it = time_of_.find(h);
    if (it == time_of_.end()) return false;
    entries_.erase({it->second, h});
    time_of_.erase(it);
    return true;
}

bool EventQueue::pending(Handle h) const { return time_of_.count(h) > 0; }

std::vector<FiredEvent> EventQueue::run_until(int64_t t_end) {
    std::vector<FiredEvent> fired;
    while (!entries_.empty()) {
        auto it = entries_.begin();
        auto [at, seq] = it->first;
        if (at > t_end) break;
        // Detach before firing: the callback may schedule or cancel.
        Entry e = std::move(it->second);
        entries_.erase(it);
        time_of_.erase(seq);
        now_ = at;
        fired.push_back({at, seq, e.kind});
        e.fn();
    }
    now_ = t_end;
    return fired;
}

} // namespace lansim
