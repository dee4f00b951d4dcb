#pragma once

// Shared fixtures plus brute-force oracles. The oracles deliberately avoid
// the library's graph code: they chew on raw node/link lists so they can
// referee it.

#include "lansim/faults.hpp"
#include "lansim/scenario.hpp"
#include "lansim/topology.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace th {

using lansim::FaultKind;
using lansim::FaultSpec;
using lansim::FlowSpec;
using lansim::LinkSpec;
using lansim::NodeKind;
using lansim::NodeSpec;
using lansim::Scenario;

struct RawGraph {
    std::vector<NodeSpec> nodes;
    std::vector<LinkSpec> links;
};

using DownNodes = std::set<std::string>;
using DownLinks = std::set<std::pair<std::string, std::string>>; // sorted pair

inline std::pair<std::string, std::string> lk(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {a, b};
}

struct OraclePath {
    std::vector<std::string> nodes;
    double cost = 0.0;
};

// Every simple path src->dst in the residual graph, by naive recursion.
inline void oracle_paths_rec(const RawGraph& g, const DownNodes& dn,
                             const DownLinks& dl, const std::string& dst,
                             std::vector<std::string>& cur,
                             std::set<std::string>& seen, double cost,
                             std::vector<OraclePath>& out) {
    // copy: recursion below grows cur and may reallocate it
    const std::string u = cur.back();
    if (u == dst) {
        out.push_back({cur, cost});
        return;
    }
    for (const auto& l : g.links) {
        std::string v;
        if (l.a == u) v = l.b;
        else if (l.b == u) v = l.a;
        else continue;
        if (seen.count(v) || dn.count(v) || dl.count(lk(l.a, l.b))) continue;
        cur.push_back(v);
        seen.insert(v);
        oracle_paths_rec(g, dn, dl, dst, cur, seen, cost + l.weight, out);
        seen.erase(v);
        cur.pop_back();
    }
}

inline std::vector<OraclePath> oracle_simple_paths(const RawGraph& g,
                                                   const DownNodes& dn,
                                                   const DownLinks& dl,
                                                   const std::string& src,
                                                   const std::string& dst) {
    std::vector<OraclePath> out;
    if (dn.count(src) || dn.count(dst)) return out;
    std::vector<std::string> cur{src};
    std::set<std::string> seen{src};
    oracle_paths_rec(g, dn, dl, dst, cur, seen, 0.0, out);
    return out;
}

// Minimum cost, ties to the lexicographically smallest node sequence.
inline std::optional<OraclePath> oracle_shortest(const RawGraph& g,
                                                 const DownNodes& dn,
                                                 const DownLinks& dl,
                                                 const std::string& src,
                                                 const std::string& dst) {
    if (src == dst && !dn.count(src)) return OraclePath{{src}, 0.0};
    auto all = oracle_simple_paths(g, dn, dl, src, dst);
    if (all.empty()) return std::nullopt;
    const OraclePath* best = &all[0];
    for (const auto& p : all)
        if (p.cost < best->cost ||
            (p.cost == best->cost && p.nodes < best->nodes))
            best = &p;
    return *best;
}

inline bool oracle_reachable(const RawGraph& g, const DownNodes& dn,
                             const DownLinks& dl, const std::string& src,
                             const std::string& dst) {
    if (dn.count(src) || dn.count(dst)) return false;
    if (src == dst) return true;
    return !oracle_simple_paths(g, dn, dl, src, dst).empty();
}

// Best alternative to `primary` by (shared links, shared interior nodes,
// cost, node sequence); nullopt when the primary is the only simple path.
inline std::optional<OraclePath> oracle_backup(
    const RawGraph& g, const std::vector<std::string>& primary) {
    auto all = oracle_simple_paths(g, {}, {}, primary.front(), primary.back());
    std::set<std::pair<std::string, std::string>> plinks;
    for (size_t i = 0; i + 1 < primary.size(); ++i)
        plinks.insert(lk(primary[i], primary[i + 1]));
    std::set<std::string> pmid(primary.begin() + 1, primary.end() - 1);

    const OraclePath* best = nullptr;
    std::tuple<int, int, double, std::vector<std::string>> best_key;
    for (const auto& c : all) {
        if (c.nodes == primary) continue;
        int sl = 0, sm = 0;
        for (size_t i = 0; i + 1 < c.nodes.size(); ++i)
            if (plinks.count(lk(c.nodes[i], c.nodes[i + 1]))) ++sl;
        for (size_t i = 1; i + 1 < c.nodes.size(); ++i)
            if (pmid.count(c.nodes[i])) ++sm;
        auto key = std::make_tuple(sl, sm, c.cost, c.nodes);
        if (!best || key < best_key) {
            best = &c;
            best_key = key;
        }
    }
    if (!best) return std::nullopt;
    return *best;
}

inline RawGraph canonical_graph() {
    RawGraph g;
    for (const char* r : {"R1", "R2"}) g.nodes.push_back({r, NodeKind::Router});
    for (const char* w : {"S1", "S2", "S3", "S4", "S5", "S6"})
        g.nodes.push_back({w, NodeKind::Switch});
    const std::pair<const char*, const char*> links[] = {
        {"S1", "S2"}, {"S2", "R1"}, {"R1", "R2"}, {"R2", "S6"},
        {"S1", "S3"}, {"S3", "S4"}, {"S4", "S5"}, {"S5", "R2"},
    };
    for (auto [a, b] : links) g.links.push_back({a, b, 1.0});
    return g;
}

inline lansim::Topology canonical_topology() {
    auto g = canonical_graph();
    return lansim::Topology::build(g.nodes, g.links);
}

// Mixed single flows and repeated pairs; ids zero-padded so map order equals
// numeric order. 26 of the 27 cross the S2-R1 link on their primary.
inline std::vector<FlowSpec> canonical_roster() {
    std::vector<FlowSpec> flows;
    auto add = [&](const char* id, const char* src, const char* dst) {
        flows.push_back({id, src, dst, 1.0, 0, std::nullopt});
    };
    add("f01", "S1", "S6");
    add("f02", "S1", "R1");
    add("f03", "S1", "S2");
    add("f04", "S6", "S1");
    add("f05", "S1", "R2");
    add("f06", "R1", "S1");
    add("f07", "R2", "S1");
    add("f08", "S3", "R1");
    add("f09", "R1", "S3");
    add("f10", "S1", "R1");
    add("f11", "S1", "R1");
    add("f12", "S1", "R1");
    add("f13", "R1", "S1");
    add("f14", "R1", "S1");
    add("f15", "R1", "S1");
    add("f16", "S1", "R2");
    add("f17", "S1", "R2");
    add("f18", "S1", "R2");
    add("f19", "R2", "S1");
    add("f20", "R2", "S1");
    add("f21", "R2", "S1");
    add("f22", "S3", "R1");
    add("f23", "S3", "R1");
    add("f24", "S3", "R1");
    add("f25", "R1", "S3");
    add("f26", "R1", "S3");
    add("f27", "R1", "S3");
    return flows;
}

inline Scenario canonical_base(const std::string& name) {
    Scenario s = lansim::canonical_scenario();
    s.name = name;
    s.flows = canonical_roster();
    return s;
}

inline FaultSpec link_down(const char* a, const char* b, int64_t at) {
    FaultSpec f;
    f.kind = FaultKind::link_down;
    f.is_link = true;
    f.a = a;
    f.b = b;
    f.at = at;
    return f;
}

inline FaultSpec node_down(const char* n, int64_t at) {
    FaultSpec f;
    f.kind = FaultKind::node_down;
    f.is_link = false;
    f.node = n;
    f.at = at;
    return f;
}

inline Scenario testcase1() {
    Scenario s = canonical_base("testcase1");
    s.faults.push_back(link_down("S2", "R1", 5000));
    return s;
}

inline Scenario testcase2() {
    Scenario s = canonical_base("testcase2");
    s.faults.push_back(node_down("S2", 5000));
    return s;
}

inline Scenario testcase3() {
    Scenario s = canonical_base("testcase3");
    s.faults.push_back(link_down("S2", "R1", 5000));
    s.faults.push_back(link_down("R2", "S6", 5000));
    return s;
}

inline Scenario failover_demo_scenario() {
    Scenario s = lansim::canonical_scenario();
    s.name = "failover_demo";
    s.flows.push_back({"f01", "S1", "S6", 1.0, 0, std::nullopt});
    s.faults.push_back(node_down("S2", 5000));
    return s;
}

inline RawGraph random_graph(std::mt19937_64& rng, int max_nodes = 8) {
    RawGraph g;
    int n = 2 + int(rng() % uint64_t(max_nodes - 1));
    for (int i = 0; i < n; ++i)
        g.nodes.push_back({"N" + std::to_string(i), NodeKind::Switch});
    int pct = 25 + int(rng() % 65); // edge probability in percent
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (int(rng() % 100) < pct)
                g.links.push_back({g.nodes[i].id, g.nodes[j].id,
                                   double(1 + rng() % 9)});
    return g;
}

// A scenario for end-to-end property runs: small graph, slow flows between
// random distinct pairs, a deterministic pre-drawn fault script.
inline Scenario random_scenario(uint64_t seed) {
    std::mt19937_64 rng(seed);
    Scenario s;
    s.name = "random-" + std::to_string(seed);
    RawGraph g = random_graph(rng);
    s.nodes = g.nodes;
    s.links = g.links;

    int nflows = 1 + int(rng() % 6);
    for (int i = 0; i < nflows && g.nodes.size() >= 2; ++i) {
        std::string src = g.nodes[rng() % g.nodes.size()].id;
        std::string dst = g.nodes[rng() % g.nodes.size()].id;
        if (src == dst) continue;
        char id[8];
        std::snprintf(id, sizeof id, "f%02d", i + 1);
        s.flows.push_back({id, src, dst, 0.1, 0, std::nullopt});
    }
    auto topo = lansim::Topology::build(g.nodes, g.links);
    s.faults = lansim::generate_random_faults(topo, rng(), 0.3,
                                              s.config.duration_ms);
    return s;
}

} // namespace th
