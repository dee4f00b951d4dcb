#include "lansim/simulation.hpp"

#include "lansim/errors.hpp"
#include "lansim/faults.hpp"
#include "lansim/traffic.hpp"

namespace lansim {

SimulationResult run_scenario(const Scenario& s) {
    Topology truth = s.make_topology();
    RecordSink sink;
    MetricsCollector metrics(s.name, s.config.seed, s.config.duration_ms);
    sink.listener = [&metrics](const LogRecord& r) { metrics.record(r); };

    EventQueue q;

    // Route definition before anything moves: primary spread over the
    // equal-cost set, backup minimizing overlap with the primary.
    RouteTable routes;
    ProbeHistory no_history;
    for (const auto& f : s.flows) {
        FlowRoute r;
        try {
            auto candidates = truth.equal_cost_paths(f.src, f.dst);
            r.primary = select_active_path(f.id, candidates, no_history);
            try {
                r.backup = truth.disjoint_backup(*r.primary);
            } catch (const NoBackupError&) {
            }
        } catch (const NoPathError&) {
        }
        r.active = r.primary;
        routes[f.id] = std::move(r);
    }
    RouteTable initial_routes = routes;

    TrafficFabric traffic(q, truth, routes, s.config, sink);
    FaultInjector injector(q, truth, sink,
                           [&traffic](int64_t now) { traffic.on_topology_changed(now); });
    Controller controller(q, truth, routes, s.config, sink,
                          [&injector](const LinkKey& k) {
                              return injector.fault_of_link(k);
                          });
    traffic.on_probe = [&controller](const ProbeResult& r) {
        controller.observe_probe(r);
    };

    // Scheduling order fixes the same-timestamp sequence: faults apply
    // first, then packet emissions, then probe traffic.
    injector.schedule(s.faults);
    for (const auto& f : s.flows) traffic.start_flow(f, s.flow_end(f));
    traffic.start_probes();

    q.run_until(s.config.duration_ms);

    LogRecord end;
    end.at = s.config.duration_ms;
    end.kind = RecordKind::run_end;
    sink.push(std::move(end));

    SimulationResult out;
    out.report = metrics.report();
    out.initial_routes = std::move(initial_routes);
    out.statuses = classify_node_status(truth, out.initial_routes, routes);
    out.final_routes = std::move(routes);
    out.final_topology = std::move(truth);
    out.log = std::move(sink.records);
    return out;
}

} // namespace lansim
