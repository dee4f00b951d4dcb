#pragma once

#include "lansim/engine.hpp"
#include "lansim/log.hpp"
#include "lansim/scenario.hpp"
#include "lansim/topology.hpp"

#include <functional>
#include <map>
#include <vector>

namespace lansim {

// Applies scripted faults to ground truth at their scheduled times. Fault
// ids are positions in the scenario's faults array; restores get ids too
// but never recovery records of their own.
class FaultInjector {
public:
    FaultInjector(EventQueue& q, Topology& truth, RecordSink& sink,
                  std::function<void(int64_t)> topology_changed);

    // One apply event per spec, scheduled in file order so same-instant
    // faults land before any same-instant probe or emission.
    void schedule(const std::vector<FaultSpec>& faults);

    // Which fault most recently broke this link (made it unusable while it
    // was usable). -1 when nothing on record. Used to attribute detections.
    int fault_of_link(const LinkKey& k) const;

private:
    void apply(const FaultSpec& f, int fault_id);
    void blame_new_unusable(const std::map<LinkKey, bool>& before, int fault_id);
    std::map<LinkKey, bool> usability_snapshot() const;

    EventQueue& q_;
    Topology& truth_;
    RecordSink& sink_;
    std::function<void(int64_t)> topology_changed_;
    std::map<LinkKey, int> cause_; // last fault that broke each link
};

// Pre-draws a deterministic fault script: roughly `rate` faults per 1000 ms
// of run, each a link_down or node_down at a random instant, half of them
// restored later. Drawing happens before the run so the event schedule
// itself stays a pure function of the inputs.
std::vector<FaultSpec> generate_random_faults(const Topology& topo,
                                              uint64_t seed, double rate,
                                              int64_t duration_ms);

} // namespace lansim
