#include "lansim/scenario.hpp"
#include "lansim/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lansim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct Checker {
    std::vector<std::string> problems;

    void add(const std::string& where, const std::string& what) {
        problems.push_back(where + ": " + what);
    }

    bool expect_object(const json& j, const std::string& where) {
        if (j.is_object()) return true;
        add(where, "expected an object");
        return false;
    }

    bool expect_array(const json& j, const std::string& where) {
        if (j.is_array()) return true;
        add(where, "expected an array");
        return false;
    }

    void check_keys(const json& j, const std::string& where,
                    const std::set<std::string>& allowed) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key()))
                add(where + "." + it.key(), "unknown key");
    }

    std::string str(const json& j, const std::string& where,
                    const char* key, bool required,
                    const std::string& fallback = "") {
        if (!j.contains(key)) {
            if (required) add(where + "." + key, "missing");
            return fallback;
        }
        if (!j[key].is_string()) {
            add(where + "." + key, "expected a string");
            return fallback;
        }
        return j[key].get<std::string>();
    }

    int64_t integer(const json& j, const std::string& where, const char* key,
                    bool required, int64_t fallback) {
        if (!j.contains(key)) {
            if (required) add(where + "." + key, "missing");
            return fallback;
        }
        if (!j[key].is_number_integer() && !j[key].is_number_unsigned()) {
            add(where + "." + key, "expected an integer");
            return fallback;
        }
        return j[key].get<int64_t>();
    }

    double number(const json& j, const std::string& where, const char* key,
                  bool required, double fallback) {
        if (!j.contains(key)) {
            if (required) add(where + "." + key, "missing");
            return fallback;
        }
        if (!j[key].is_number()) {
            add(where + "." + key, "expected a number");
            return fallback;
        }
        return j[key].get<double>();
    }
};

NodeKind parse_kind(const std::string& s, Checker& ck, const std::string& where) {
    if (s == "host") return NodeKind::Host;
    if (s == "switch") return NodeKind::Switch;
    if (s == "router") return NodeKind::Router;
    ck.add(where, "unknown node kind '" + s + "'");
    return NodeKind::Switch;
}

FaultKind parse_fault_kind(const std::string& s, Checker& ck,
                           const std::string& where) {
    if (s == "link_down") return FaultKind::link_down;
    if (s == "node_down") return FaultKind::node_down;
    if (s == "congestion") return FaultKind::congestion;
    if (s == "restore") return FaultKind::restore;
    ck.add(where, "unknown fault kind '" + s + "'");
    return FaultKind::link_down;
}

} // namespace

const char* to_string(FaultKind k) {
    switch (k) {
    case FaultKind::link_down: return "link_down";
    case FaultKind::node_down: return "node_down";
    case FaultKind::congestion: return "congestion";
    case FaultKind::restore: return "restore";
    }
    return "?";
}

const char* to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Host: return "host";
    case NodeKind::Switch: return "switch";
    case NodeKind::Router: return "router";
    }
    return "?";
}

Scenario parse_scenario(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.what());
    }

    Checker ck;
    Scenario s;
    if (!ck.expect_object(root, "scenario"))
        throw ValidationError(std::move(ck.problems));
    ck.check_keys(root, "scenario",
                  {"name", "nodes", "links", "flows", "faults", "config"});

    s.name = ck.str(root, "scenario", "name", false);

    std::set<std::string> node_ids;
    if (root.contains("nodes") && ck.expect_array(root["nodes"], "nodes")) {
        int i = 0;
        for (const auto& jn : root["nodes"]) {
            std::string where = "nodes[" + std::to_string(i++) + "]";
            if (!ck.expect_object(jn, where)) continue;
            ck.check_keys(jn, where, {"id", "kind"});
            NodeSpec ns;
            ns.id = ck.str(jn, where, "id", true);
            ns.kind = parse_kind(ck.str(jn, where, "kind", false, "switch"), ck,
                                 where + ".kind");
            if (ns.id.empty()) ck.add(where + ".id", "empty id");
            else if (!node_ids.insert(ns.id).second)
                ck.add(where + ".id", "duplicate node id '" + ns.id + "'");
            s.nodes.push_back(std::move(ns));
        }
    } else {
        ck.add("nodes", "missing");
    }

    auto known_node = [&](const std::string& id) { return node_ids.count(id) > 0; };

    std::set<LinkKey> link_keys;
    if (root.contains("links") && ck.expect_array(root["links"], "links")) {
        int i = 0;
        for (const auto& jl : root["links"]) {
            std::string where = "links[" + std::to_string(i++) + "]";
            if (!ck.expect_object(jl, where)) continue;
            ck.check_keys(jl, where, {"a", "b", "weight"});
            LinkSpec ls;
            ls.a = ck.str(jl, where, "a", true);
            ls.b = ck.str(jl, where, "b", true);
            ls.weight = ck.number(jl, where, "weight", false, 1.0);
            if (!ls.a.empty() && !known_node(ls.a))
                ck.add(where + ".a", "unknown node '" + ls.a + "'");
            if (!ls.b.empty() && !known_node(ls.b))
                ck.add(where + ".b", "unknown node '" + ls.b + "'");
            if (!ls.a.empty() && ls.a == ls.b)
                ck.add(where, "self-link at '" + ls.a + "'");
            if (ls.weight <= 0.0) ck.add(where + ".weight", "must be positive");
            if (!ls.a.empty() && !ls.b.empty() && ls.a != ls.b &&
                !link_keys.insert(LinkKey(ls.a, ls.b)).second)
                ck.add(where, "duplicate link " + LinkKey(ls.a, ls.b).str());
            s.links.push_back(std::move(ls));
        }
    }

    auto known_link = [&](const std::string& a, const std::string& b) {
        return link_keys.count(LinkKey(a, b)) > 0;
    };

    if (root.contains("flows") && ck.expect_array(root["flows"], "flows")) {
        int i = 0;
        std::set<std::string> flow_ids;
        for (const auto& jf : root["flows"]) {
            std::string where = "flows[" + std::to_string(i++) + "]";
            if (!ck.expect_object(jf, where)) continue;
            ck.check_keys(jf, where, {"id", "src", "dst", "rate", "start", "end"});
            FlowSpec fs;
            fs.id = ck.str(jf, where, "id", true);
            fs.src = ck.str(jf, where, "src", true);
            fs.dst = ck.str(jf, where, "dst", true);
            fs.rate = ck.number(jf, where, "rate", false, 1.0);
            fs.start = ck.integer(jf, where, "start", false, 0);
            if (jf.contains("end"))
                fs.end = ck.integer(jf, where, "end", false, 0);
            if (fs.id.empty()) ck.add(where + ".id", "empty id");
            else if (!flow_ids.insert(fs.id).second)
                ck.add(where + ".id", "duplicate flow id '" + fs.id + "'");
            if (!fs.src.empty() && !known_node(fs.src))
                ck.add(where + ".src", "unknown node '" + fs.src + "'");
            if (!fs.dst.empty() && !known_node(fs.dst))
                ck.add(where + ".dst", "unknown node '" + fs.dst + "'");
            if (!fs.src.empty() && fs.src == fs.dst)
                ck.add(where, "src and dst are both '" + fs.src + "'");
            if (fs.rate <= 0.0) ck.add(where + ".rate", "must be positive");
            if (fs.start < 0) ck.add(where + ".start", "must be >= 0");
            if (fs.end && *fs.end <= fs.start)
                ck.add(where + ".end", "must be after start");
            s.flows.push_back(std::move(fs));
        }
    }

    if (root.contains("faults") && ck.expect_array(root["faults"], "faults")) {
        int i = 0;
        for (const auto& jf : root["faults"]) {
            std::string where = "faults[" + std::to_string(i++) + "]";
            if (!ck.expect_object(jf, where)) continue;
            ck.check_keys(jf, where,
                          {"kind", "target", "at", "p_drop", "extra_delay",
                           "duration"});
            FaultSpec fs;
            fs.kind = parse_fault_kind(ck.str(jf, where, "kind", true), ck,
                                       where + ".kind");
            fs.at = ck.integer(jf, where, "at", true, 0);
            if (fs.at < 0) ck.add(where + ".at", "must be >= 0");

            if (!jf.contains("target")) {
                ck.add(where + ".target", "missing");
            } else if (jf["target"].is_string()) {
                fs.is_link = false;
                fs.node = jf["target"].get<std::string>();
                if (!known_node(fs.node))
                    ck.add(where + ".target", "unknown node '" + fs.node + "'");
            } else if (jf["target"].is_array() && jf["target"].size() == 2 &&
                       jf["target"][0].is_string() && jf["target"][1].is_string()) {
                fs.is_link = true;
                fs.a = jf["target"][0].get<std::string>();
                fs.b = jf["target"][1].get<std::string>();
                if (!known_link(fs.a, fs.b))
                    ck.add(where + ".target",
                           "unknown link " + LinkKey(fs.a, fs.b).str());
            } else {
                ck.add(where + ".target", "expected a node id or a [a, b] pair");
            }

            if (fs.kind == FaultKind::node_down && fs.is_link)
                ck.add(where + ".target", "node_down needs a node id");
            if ((fs.kind == FaultKind::link_down ||
                 fs.kind == FaultKind::congestion) &&
                !fs.is_link)
                ck.add(where + ".target",
                       std::string(to_string(fs.kind)) + " needs a [a, b] pair");

            if (fs.kind == FaultKind::congestion) {
                fs.p_drop = ck.number(jf, where, "p_drop", true, 0.0);
                fs.extra_delay = ck.integer(jf, where, "extra_delay", false, 0);
                fs.duration = ck.integer(jf, where, "duration", true, 0);
                if (fs.p_drop < 0.0 || fs.p_drop > 1.0)
                    ck.add(where + ".p_drop", "must be in [0, 1]");
                if (fs.extra_delay < 0)
                    ck.add(where + ".extra_delay", "must be >= 0");
                if (fs.duration <= 0)
                    ck.add(where + ".duration", "must be positive");
            } else {
                for (const char* k : {"p_drop", "extra_delay", "duration"})
                    if (jf.contains(k))
                        ck.add(where + "." + k, "only valid for congestion");
            }
            s.faults.push_back(std::move(fs));
        }
    }

    if (root.contains("config")) {
        const json& jc = root["config"];
        if (ck.expect_object(jc, "config")) {
            ck.check_keys(jc, "config",
                          {"probe_interval_ms", "probe_timeout_ms",
                           "miss_threshold", "per_hop_latency_ms",
                           "controller_proc_delay_ms", "per_flow_commit_delay_ms",
                           "duration_ms", "seed"});
            SimConfig& c = s.config;
            c.probe_interval_ms = ck.integer(jc, "config", "probe_interval_ms",
                                             false, c.probe_interval_ms);
            c.probe_timeout_ms = ck.integer(jc, "config", "probe_timeout_ms",
                                            false, c.probe_timeout_ms);
            c.miss_threshold = static_cast<int>(ck.integer(
                jc, "config", "miss_threshold", false, c.miss_threshold));
            c.per_hop_latency_ms = ck.integer(jc, "config", "per_hop_latency_ms",
                                              false, c.per_hop_latency_ms);
            c.controller_proc_delay_ms =
                ck.integer(jc, "config", "controller_proc_delay_ms", false,
                           c.controller_proc_delay_ms);
            c.per_flow_commit_delay_ms =
                ck.integer(jc, "config", "per_flow_commit_delay_ms", false,
                           c.per_flow_commit_delay_ms);
            c.duration_ms =
                ck.integer(jc, "config", "duration_ms", false, c.duration_ms);
            c.seed = static_cast<uint64_t>(
                ck.integer(jc, "config", "seed", false,
                           static_cast<int64_t>(c.seed)));
            if (c.probe_interval_ms <= 0)
                ck.add("config.probe_interval_ms", "must be positive");
            if (c.probe_timeout_ms <= 0)
                ck.add("config.probe_timeout_ms", "must be positive");
            if (c.miss_threshold < 1)
                ck.add("config.miss_threshold", "must be >= 1");
            if (c.per_hop_latency_ms <= 0)
                ck.add("config.per_hop_latency_ms", "must be positive");
            if (c.controller_proc_delay_ms < 0)
                ck.add("config.controller_proc_delay_ms", "must be >= 0");
            if (c.per_flow_commit_delay_ms < 0)
                ck.add("config.per_flow_commit_delay_ms", "must be >= 0");
            if (c.duration_ms <= 0)
                ck.add("config.duration_ms", "must be positive");
        }
    }

    // Flow windows must overlap the run to mean anything; ends past the run
    // are fine, sources just stop at duration.
    for (size_t i = 0; i < s.flows.size(); ++i)
        if (s.flows[i].start >= s.config.duration_ms)
            ck.add("flows[" + std::to_string(i) + "].start",
                   "at or after run end");

    if (!ck.problems.empty()) throw ValidationError(std::move(ck.problems));
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SimError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json root;
    root["name"] = s.name;
    root["nodes"] = ordered_json::array();
    for (const auto& n : s.nodes)
        root["nodes"].push_back({{"id", n.id}, {"kind", to_string(n.kind)}});
    root["links"] = ordered_json::array();
    for (const auto& l : s.links)
        root["links"].push_back({{"a", l.a}, {"b", l.b}, {"weight", l.weight}});
    root["flows"] = ordered_json::array();
    for (const auto& f : s.flows) {
        ordered_json jf{{"id", f.id}, {"src", f.src}, {"dst", f.dst},
                        {"rate", f.rate}, {"start", f.start}};
        if (f.end) jf["end"] = *f.end;
        root["flows"].push_back(std::move(jf));
    }
    root["faults"] = ordered_json::array();
    for (const auto& f : s.faults) {
        ordered_json jf{{"kind", to_string(f.kind)}};
        if (f.is_link) jf["target"] = {f.a, f.b};
        else jf["target"] = f.node;
        jf["at"] = f.at;
        if (f.kind == FaultKind::congestion) {
            jf["p_drop"] = f.p_drop;
            jf["extra_delay"] = f.extra_delay;
            jf["duration"] = f.duration;
        }
        root["faults"].push_back(std::move(jf));
    }
    root["config"] = {{"probe_interval_ms", s.config.probe_interval_ms},
                      {"probe_timeout_ms", s.config.probe_timeout_ms},
                      {"miss_threshold", s.config.miss_threshold},
                      {"per_hop_latency_ms", s.config.per_hop_latency_ms},
                      {"controller_proc_delay_ms", s.config.controller_proc_delay_ms},
                      {"per_flow_commit_delay_ms", s.config.per_flow_commit_delay_ms},
                      {"duration_ms", s.config.duration_ms},
                      {"seed", s.config.seed}};
    return root.dump(2) + "\n";
}

Scenario canonical_scenario() {
    Scenario s;
    s.name = "canonical";
    for (const char* r : {"R1", "R2"})
        s.nodes.push_back({r, NodeKind::Router});
    for (const char* w : {"S1", "S2", "S3", "S4", "S5", "S6"})
        s.nodes.push_back({w, NodeKind::Switch});
    const std::pair<const char*, const char*> links[] = {
        {"S1", "S2"}, {"S2", "R1"}, {"R1", "R2"}, {"R2", "S6"},
        {"S1", "S3"}, {"S3", "S4"}, {"S4", "S5"}, {"S5", "R2"},
    };
    for (auto [a, b] : links) s.links.push_back({a, b, 1.0});
    return s;
}

} // namespace lansim
