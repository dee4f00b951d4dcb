#include "lansim/metrics.hpp"
#include "lansim/errors.hpp"

#include <algorithm>

namespace lansim {

double round1_percent(int64_t num, int64_t den) {
    // tenths of a percent, round half up, all in integers
    int64_t tenths = (2000 * num + den) / (2 * den);
    return double(tenths) / 10.0;
}

MetricsCollector::MetricsCollector(std::string scenario, uint64_t seed,
                                   int64_t duration_ms)
    : scenario_(std::move(scenario)), seed_(seed), duration_ms_(duration_ms) {}

void MetricsCollector::record(const LogRecord& r) {
    switch (r.kind) {
    case RecordKind::fault: {
        if (faults_.count(r.fault_id)) break;
        FaultAcc& f = faults_[r.fault_id];
        f.kind = r.text.substr(0, r.text.find(' '));
        f.target = r.b.empty() ? r.a : r.a + "-" + r.b;
        f.fault_at = r.at;
        break;
    }
    case RecordKind::detection: {
        auto it = faults_.find(r.fault_id);
        if (it != faults_.end() && it->second.detected_at < 0)
            it->second.detected_at = r.at;
        break;
    }
    case RecordKind::decision:
        if (r.fault_id >= 0) {
            auto it = faults_.find(r.fault_id);
            if (it != faults_.end()) it->second.affected.insert(r.flow);
        }
        latest_plan_[r.flow] = {r.fault_id, false};
        break;
    case RecordKind::commit: {
        auto it = faults_.find(r.fault_id);
        if (it != faults_.end()) {
            it->second.rerouted.insert(r.flow);
            it->second.last_action_at =
                std::max(it->second.last_action_at, r.at);
        }
        auto lp = latest_plan_.find(r.flow);
        if (lp != latest_plan_.end() && lp->second.first == r.fault_id)
            lp->second.second = true;
        finally_routed_[r.flow] = true;
        break;
    }
    case RecordKind::unroute: {
        auto it = faults_.find(r.fault_id);
        if (it != faults_.end())
            it->second.last_action_at =
                std::max(it->second.last_action_at, r.at);
        auto lp = latest_plan_.find(r.flow);
        if (lp != latest_plan_.end() && lp->second.first == r.fault_id)
            lp->second.second = true;
        finally_routed_[r.flow] = false;
        break;
    }
    case RecordKind::packet_emit:
        if (r.pkt >= 0) {
            if (size_t(r.pkt) >= packets_.size())
                packets_.resize(size_t(r.pkt) + 1);
            if (packets_[size_t(r.pkt)].created_at < 0) {
                packets_[size_t(r.pkt)].created_at = r.at;
                ++sent_;
            }
        }
        break;
    case RecordKind::packet_outcome:
        if (r.pkt >= 0 && size_t(r.pkt) < packets_.size()) {
            PacketAcc& p = packets_[size_t(r.pkt)];
            if (p.created_at < 0 || p.outcome != 0) break; // unknown or dup
            if (r.ok) {
                p.outcome = 1;
                ++delivered_;
            } else {
                p.outcome = 2;
                p.reason = r.reason;
                ++lost_;
                ++lost_by_reason_[to_string(r.reason)];
            }
        }
        break;
    case RecordKind::run_end:
        run_ended_ = true;
        break;
    default:
        break;
    }
}

LossRate MetricsCollector::packet_loss_rate(int64_t t0, int64_t t1) const {
    int64_t sent = 0, lost = 0;
    for (const auto& p : packets_) {
        if (p.created_at < t0 || p.created_at > t1) continue;
        ++sent;
        if (p.outcome == 2) ++lost;
    }
    if (sent == 0) return {0.0, true};
    return {round1_percent(lost, sent), false};
}

const MetricsCollector::FaultAcc&
MetricsCollector::fault_or_throw(int fault_id) const {
    auto it = faults_.find(fault_id);
    if (it == faults_.end()) throw UnknownFaultError(fault_id);
    return it->second;
}

bool MetricsCollector::quiesced(int fault_id) const {
    for (const auto& [flow, plan] : latest_plan_)
        if (plan.first == fault_id && !plan.second) return false;
    return true;
}

int64_t MetricsCollector::mttr(int fault_id) const {
    const FaultAcc& f = fault_or_throw(fault_id);
    if (!quiesced(fault_id)) throw FaultNotQuiescedError(fault_id);
    if (f.last_action_at >= 0) return f.last_action_at - f.fault_at;
    if (f.detected_at >= 0) return f.detected_at - f.fault_at;
    return 0; // never even detected
}

double MetricsCollector::success_rate(int fault_id) const {
    const FaultAcc& f = fault_or_throw(fault_id);
    if (f.affected.empty()) return 100.0;
    return round1_percent(int64_t(f.rerouted.size()),
                          int64_t(f.affected.size()));
}

MetricsReport MetricsCollector::report() const {
    if (!run_ended_) throw RunNotEndedError();

    MetricsReport rep;
    rep.scenario = scenario_;
    rep.seed = seed_;
    rep.duration_ms = duration_ms_;
    rep.packets_sent = sent_;
    rep.delivered = delivered_;
    rep.lost = lost_;
    rep.in_flight = sent_ - delivered_ - lost_;
    rep.lost_by_reason = lost_by_reason_;
    rep.loss_rate_percent = sent_ ? round1_percent(lost_, sent_) : 0.0;

    std::set<std::string> affected_union;
    for (const auto& [id, f] : faults_) {
        FaultRecoveryRecord fr;
        fr.fault_id = id;
        fr.kind = f.kind;
        fr.target = f.target;
        fr.fault_at = f.fault_at;
        fr.detected_at = f.detected_at;
        fr.last_commit_at = f.last_action_at;
        fr.affected_flows = int64_t(f.affected.size());
        fr.rerouted_flows = int64_t(f.rerouted.size());
        // Best effort when the run ended mid-response; the standalone mttr()
        // accessor is the one that insists on quiescence.
        fr.mttr_ms = f.last_action_at >= 0 ? f.last_action_at - f.fault_at
                     : f.detected_at >= 0  ? f.detected_at - f.fault_at
                                           : 0;
        fr.success_rate_percent = success_rate(id);
        rep.faults.push_back(std::move(fr));
        rep.mttr_ms = std::max(rep.mttr_ms, rep.faults.back().mttr_ms);
        affected_union.insert(f.affected.begin(), f.affected.end());
    }

    if (affected_union.empty()) {
        rep.success_rate_percent = 100.0;
    } else {
        int64_t routed = 0;
        for (const auto& flow : affected_union) {
            auto it = finally_routed_.find(flow);
            if (it != finally_routed_.end() && it->second) ++routed;
        }
        rep.success_rate_percent =
            round1_percent(routed, int64_t(affected_union.size()));
    }
    return rep;
}

} // namespace lansim
