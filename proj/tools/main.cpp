#include "lansim/errors.hpp"
#include "lansim/report.hpp"
#include "lansim/scenario.hpp"
#include "lansim/simulation.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

namespace {

int write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

int cmd_run(const std::string& file, std::optional<uint64_t> seed,
            std::optional<int64_t> duration, const std::string& report_json,
            const std::string& report_csv, const std::string& dot,
            const std::string& event_log) {
    lansim::Scenario s = lansim::load_scenario_file(file);
    if (seed) s.config.seed = *seed;
    if (duration) s.config.duration_ms = *duration;

    lansim::SimulationResult res = lansim::run_scenario(s);

    std::string json = lansim::to_json(res.report);
    if (!report_json.empty()) {
        if (int rc = write_file(report_json, json)) return rc;
    } else {
        std::cout << json;
    }
    if (!report_csv.empty()) {
        if (int rc = write_file(report_csv, lansim::to_csv_header() +
                                                lansim::to_csv_row(res.report)))
            return rc;
    }
    if (!dot.empty()) {
        if (int rc = write_file(
                dot, lansim::export_dot(res.final_topology, res.statuses)))
            return rc;
    }
    if (!event_log.empty()) {
        if (int rc = write_file(event_log, lansim::format_event_log(res.log)))
            return rc;
    }
    return 0;
}

int cmd_validate(const std::string& file) {
    lansim::Scenario s = lansim::load_scenario_file(file);
    std::cout << "ok: " << s.nodes.size() << " nodes, " << s.links.size()
              << " links, " << s.flows.size() << " flows, " << s.faults.size()
              << " faults\n";
    return 0;
}

int cmd_paths(const std::string& file, const std::string& from,
              const std::string& to) {
    lansim::Scenario s = lansim::load_scenario_file(file);
    lansim::Topology topo = s.make_topology();
    if (!topo.has_node(from)) throw lansim::UnknownElementError("node " + from);
    if (!topo.has_node(to)) throw lansim::UnknownElementError("node " + to);

    lansim::Path primary;
    try {
        primary = topo.shortest_path(from, to);
    } catch (const lansim::NoPathError&) {
        std::cout << "no path from " << from << " to " << to << "\n";
        return 0;
    }
    std::cout << "shortest: " << primary.str() << " cost " << primary.cost
              << "\n";
    auto equal = topo.equal_cost_paths(from, to);
    if (equal.size() > 1) {
        std::cout << "equal-cost set:\n";
        for (const auto& p : equal)
            std::cout << "  " << p.str() << " cost " << p.cost << "\n";
    }
    try {
        lansim::Path backup = topo.disjoint_backup(primary);
        std::cout << "backup: " << backup.str() << " cost " << backup.cost
                  << "\n";
    } catch (const lansim::NoBackupError&) {
        std::cout << "backup: none (primary is the only path)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fault-tolerant LAN switching simulator"};
    app.require_subcommand(1);

    std::string file, from, to;
    std::optional<uint64_t> seed;
    std::optional<int64_t> duration;
    std::string report_json, report_csv, dot, event_log;

    CLI::App* run = app.add_subcommand("run", "simulate a scenario file");
    run->add_option("file", file, "scenario JSON file")->required();
    run->add_option("--seed", seed, "override config.seed");
    run->add_option("--duration", duration, "override config.duration_ms (ms)");
    run->add_option("--report-json", report_json, "write the JSON report here");
    run->add_option("--report-csv", report_csv, "write a one-row CSV summary");
    run->add_option("--dot", dot, "write a Graphviz view of the end state");
    run->add_option("--event-log", event_log, "write the full event log");

    CLI::App* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("file", file, "scenario JSON file")->required();

    CLI::App* paths = app.add_subcommand("paths", "inspect routes in a scenario");
    paths->add_option("file", file, "scenario JSON file")->required();
    paths->add_option("--from", from, "source node id")->required();
    paths->add_option("--to", to, "destination node id")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(file, seed, duration, report_json, report_csv, dot,
                           event_log);
        if (validate->parsed()) return cmd_validate(file);
        if (paths->parsed()) return cmd_paths(file, from, to);
    } catch (const lansim::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const lansim::SyntaxError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const lansim::UnknownElementError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const lansim::SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
