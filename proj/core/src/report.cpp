#include "lansim/report.hpp"
#include "lansim/errors.hpp"

#include <sstream>

#include "json.hpp"

namespace lansim {

using nlohmann::ordered_json;

std::string to_json(const MetricsReport& r) {
    ordered_json j;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["duration_ms"] = r.duration_ms;
    j["packets"] = {{"sent", r.packets_sent},
                    {"delivered", r.delivered},
                    {"lost", r.lost},
                    {"in_flight", r.in_flight},
                    {"lost_by_reason", r.lost_by_reason}};
    j["loss_rate_percent"] = r.loss_rate_percent;
    j["faults"] = ordered_json::array();
    for (const auto& f : r.faults) {
        j["faults"].push_back({{"fault_id", f.fault_id},
                               {"kind", f.kind},
                               {"target", f.target},
                               {"fault_at_ms", f.fault_at},
                               {"detected_at_ms", f.detected_at},
                               {"last_commit_at_ms", f.last_commit_at},
                               {"affected_flows", f.affected_flows},
                               {"rerouted_flows", f.rerouted_flows},
                               {"mttr_ms", f.mttr_ms},
                               {"success_rate_percent", f.success_rate_percent}});
    }
    j["summary"] = {{"mttr_ms", r.mttr_ms},
                    {"success_rate_percent", r.success_rate_percent}};
    return j.dump(2) + "\n";
}

namespace {

std::string fmt1(double v) {
    // values are exact tenths; print with one decimal
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

} // namespace

std::string to_csv_header() {
    return "test_case,loss_percent,mttr_ms,success_percent\n";
}

std::string to_csv_row(const MetricsReport& r) {
    std::ostringstream out;
    out << r.scenario << "," << fmt1(r.loss_rate_percent) << "," << r.mttr_ms
        << "," << fmt1(r.success_rate_percent) << "\n";
    return out.str();
}

std::string export_dot(const Topology& topo,
                       const std::map<NodeId, NodeStatus>& statuses) {
    std::ostringstream out;
    out << "graph lan {\n";
    out << "  node [style=filled];\n";
    for (const auto& id : topo.node_ids()) {
        auto it = statuses.find(id);
        if (it == statuses.end()) throw MissingStatusError(id);
        const char* color = it->second == NodeStatus::Failed     ? "red"
                            : it->second == NodeStatus::Rerouted ? "orange"
                                                                 : "green";
        out << "  \"" << id << "\" [fillcolor=" << color << "];\n";
    }
    for (const auto& k : topo.link_keys()) {
        out << "  \"" << k.a << "\" -- \"" << k.b << "\"";
        if (!topo.link_usable(k.a, k.b)) out << " [style=dashed]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string format_event_log(const std::vector<LogRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        out << "t=" << r.at << " ev=" << to_string(r.kind);
        switch (r.kind) {
        case RecordKind::fault:
        case RecordKind::restore:
            out << " id=" << r.fault_id << " target="
                << (r.b.empty() ? r.a : r.a + "-" + r.b) << " what=" << r.text;
            break;
        case RecordKind::probe:
            out << " link=" << r.a << "-" << r.b << " sent=" << r.t0
                << " ok=" << (r.ok ? 1 : 0);
            break;
        case RecordKind::detection:
            out << " fault=" << r.fault_id << " link=" << r.a << "-" << r.b;
            break;
        case RecordKind::decision:
            out << " flow=" << r.flow << " fault=" << r.fault_id
                << " choice=" << to_string(r.decision) << " path="
                << (r.text.empty() ? "-" : r.text);
            break;
        case RecordKind::commit:
            out << " flow=" << r.flow << " fault=" << r.fault_id
                << " path=" << r.text;
            break;
        case RecordKind::unroute:
            out << " flow=" << r.flow << " fault=" << r.fault_id;
            break;
        case RecordKind::recovery:
            out << " link=" << r.a << "-" << r.b;
            break;
        case RecordKind::state_change:
            out << " state=" << r.text;
            break;
        case RecordKind::packet_emit:
            out << " pkt=" << r.pkt << " flow=" << r.flow << " path="
                << (r.text.empty() ? "-" : r.text);
            break;
        case RecordKind::packet_outcome:
            out << " pkt=" << r.pkt << " flow=" << r.flow << " t0=" << r.t0;
            if (r.ok) {
                out << " outcome=delivered";
            } else {
                out << " outcome=lost reason=" << to_string(r.reason);
                if (!r.a.empty())
                    out << " at=" << (r.b.empty() ? r.a : r.a + "-" + r.b);
            }
            break;
        case RecordKind::run_end:
            break;
        }
        out << "\n";
    }
    return out.str();
}

} // namespace lansim
