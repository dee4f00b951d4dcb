#include "lansim/engine.hpp"
#include "lansim/scenario.hpp"
#include "lansim/simulation.hpp"
#include "lansim/topology.hpp"

#include <random>

#include <benchmark/benchmark.h>

namespace {

using namespace lansim;

// Random connected-ish graph: ring plus extra chords.
Topology random_graph(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<NodeSpec> nodes;
    for (int i = 0; i < n; ++i)
        nodes.push_back({"N" + std::to_string(i), NodeKind::Switch});
    std::vector<LinkSpec> links;
    for (int i = 0; i < n; ++i)
        links.push_back({nodes[i].id, nodes[(i + 1) % n].id,
                         double(1 + rng() % 9)});
    int extra = n / 2;
    for (int e = 0; e < extra; ++e) {
        int a = int(rng() % uint64_t(n)), b = int(rng() % uint64_t(n));
        if (a == b) continue;
        LinkSpec l{nodes[a].id, nodes[b].id, double(1 + rng() % 9)};
        bool dup = false;
        for (const auto& x : links)
            if (LinkKey(x.a, x.b) == LinkKey(l.a, l.b)) dup = true;
        if (!dup) links.push_back(l);
    }
    return Topology::build(nodes, links);
}

void BM_shortest_path(benchmark::State& state) {
    int n = int(state.range(0));
    Topology t = random_graph(n, 42);
    auto ids = t.node_ids();
    for (auto _ : state) {
        auto p = t.shortest_path(ids.front(), ids.back());
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_shortest_path)->Arg(8)->Arg(16)->Arg(32);

void BM_event_queue(benchmark::State& state) {
    int64_t n = state.range(0);
    for (auto _ : state) {
        EventQueue q;
        int64_t fired = 0;
        for (int64_t i = 0; i < n; ++i)
            q.schedule(EventKind::controller_action, i % 1000,
                       [&fired] { ++fired; });
        q.run_until(1000);
        benchmark::DoNotOptimize(fired);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_event_queue)->Arg(1000)->Arg(10000);

void BM_canonical_run(benchmark::State& state) {
    Scenario s = canonical_scenario();
    s.name = "bench";
    s.flows.push_back({"f01", "S1", "S6", 1.0, 0, std::nullopt});
    s.flows.push_back({"f02", "S1", "R1", 1.0, 0, std::nullopt});
    FaultSpec f;
    f.kind = FaultKind::link_down;
    f.is_link = true;
    f.a = "S2";
    f.b = "R1";
    f.at = 5000;
    s.faults.push_back(f);
    s.config.duration_ms = int64_t(state.range(0));
    for (auto _ : state) {
        auto res = run_scenario(s);
        benchmark::DoNotOptimize(res.report.lost);
    }
}
BENCHMARK(BM_canonical_run)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
