#include "lansim/faults.hpp"
#include "lansim/errors.hpp"

#include <algorithm>
#include <random>

namespace lansim {

FaultInjector::FaultInjector(EventQueue& q, Topology& truth, RecordSink& sink,
                             std::function<void(int64_t)> topology_changed)
    : q_(q), truth_(truth), sink_(sink),
      topology_changed_(std::move(topology_changed)) {}

void FaultInjector::schedule(const std::vector<FaultSpec>& faults) {
    for (size_t i = 0; i < faults.size(); ++i) {
        const FaultSpec f = faults[i];
        int id = int(i);
        EventKind kind = f.kind == FaultKind::restore ? EventKind::restore_apply
                                                      : EventKind::fault_apply;
        q_.schedule(kind, f.at, [this, f, id] { apply(f, id); });
    }
}

std::map<LinkKey, bool> FaultInjector::usability_snapshot() const {
    std::map<LinkKey, bool> out;
    for (const auto& k : truth_.link_keys())
        out[k] = truth_.link_usable(k.a, k.b);
    return out;
}

void FaultInjector::blame_new_unusable(const std::map<LinkKey, bool>& before,
                                       int fault_id) {
    for (const auto& [k, was] : before)
        if (was && !truth_.link_usable(k.a, k.b)) cause_[k] = fault_id;
}

int FaultInjector::fault_of_link(const LinkKey& k) const {
    auto it = cause_.find(k);
    return it == cause_.end() ? -1 : it->second;
}

void FaultInjector::apply(const FaultSpec& f, int fault_id) {
    auto before = usability_snapshot();
    LogRecord r;
    r.at = q_.now();
    r.fault_id = fault_id;

    switch (f.kind) {
    case FaultKind::link_down:
        truth_.set_link_state(f.a, f.b, ElementState::Down);
        r.kind = RecordKind::fault;
        r.a = LinkKey(f.a, f.b).a;
        r.b = LinkKey(f.a, f.b).b;
        r.text = "link_down";
        break;
    case FaultKind::node_down:
        truth_.set_node_state(f.node, ElementState::Down);
        r.kind = RecordKind::fault;
        r.a = f.node;
        r.text = "node_down";
        break;
    case FaultKind::congestion: {
        Congestion c{f.p_drop, f.extra_delay, f.at + f.duration};
        truth_.set_congestion(f.a, f.b, c);
        LinkKey k(f.a, f.b);
        q_.schedule(EventKind::restore_apply, f.at + f.duration,
                    [this, k] { truth_.set_congestion(k.a, k.b, std::nullopt); });
        r.kind = RecordKind::fault;
        r.a = k.a;
        r.b = k.b;
        r.text = "congestion p_drop=" + std::to_string(f.p_drop) +
                 " extra_delay=" + std::to_string(f.extra_delay) +
                 " until=" + std::to_string(f.at + f.duration);
        break;
    }
    case FaultKind::restore:
        if (f.is_link) {
            truth_.set_link_state(f.a, f.b, ElementState::Up);
            r.a = LinkKey(f.a, f.b).a;
            r.b = LinkKey(f.a, f.b).b;
        } else {
            truth_.set_node_state(f.node, ElementState::Up);
            r.a = f.node;
        }
        r.kind = RecordKind::restore;
        r.text = "restore";
        break;
    }

    sink_.push(std::move(r));
    blame_new_unusable(before, fault_id);
    if (topology_changed_) topology_changed_(q_.now());
}

std::vector<FaultSpec> generate_random_faults(const Topology& topo,
                                              uint64_t seed, double rate,
                                              int64_t duration_ms) {
    std::mt19937_64 rng(seed);
    auto links = topo.link_keys();
    auto nodes = topo.node_ids();
    if (links.empty() || nodes.empty()) return {};

    // Faults land in the middle of the run and restores strictly after
    // their fault, leaving room at the tail for probes to notice repairs
    // and the controller to finish acting before the run ends.
    int64_t lo = duration_ms / 5;
    int64_t hi = std::max(duration_ms * 3 / 5, lo);
    auto pick = [&rng](int64_t a, int64_t b) {
        if (b < a) b = a;
        return a + int64_t(rng() % uint64_t(b - a + 1));
    };

    int count = std::max<int>(1, int(rate * double(duration_ms) / 1000.0));
    std::vector<FaultSpec> out;
    for (int i = 0; i < count; ++i) {
        FaultSpec f;
        f.at = pick(lo, hi);
        if (rng() % 2 == 0) {
            f.kind = FaultKind::link_down;
            f.is_link = true;
            const LinkKey& k = links[rng() % links.size()];
            f.a = k.a;
            f.b = k.b;
        } else {
            f.kind = FaultKind::node_down;
            f.is_link = false;
            f.node = nodes[rng() % nodes.size()];
        }
        bool restore_later = rng() % 2 == 0;
        out.push_back(f);
        if (restore_later) {
            FaultSpec r = f;
            r.kind = FaultKind::restore;
            r.at = f.at + pick(100, duration_ms / 5);
            out.push_back(r);
        }
    }
    return out;
}

} // namespace lansim
