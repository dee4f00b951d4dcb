#include "doctest.h"

#include "helpers.hpp"
#include "lansim/errors.hpp"
#include "lansim/failover.hpp"

#include <vector>

using namespace lansim;

namespace {

std::vector<LogRecord> pick(const RecordSink& s, RecordKind k) {
    std::vector<LogRecord> out;
    for (const auto& r : s.records)
        if (r.kind == k) out.push_back(r);
    return out;
}

std::vector<std::string> state_trace(const RecordSink& s) {
    std::vector<std::string> out;
    for (const auto& r : pick(s, RecordKind::state_change)) out.push_back(r.text);
    return out;
}

void route_flow(RouteTable& rt, const Topology& t, const std::string& id,
                const char* src, const char* dst) {
    FlowRoute r;
    r.primary = t.shortest_path(src, dst);
    try {
        r.backup = t.disjoint_backup(*r.primary);
    } catch (const NoBackupError&) {
    }
    r.active = r.primary;
    rt[id] = std::move(r);
}

// Drives the controller the way the fabric would: results are observed at
// sent + probe_timeout, in scheduling order on ties.
struct Rig {
    EventQueue q;
    RouteTable routes;
    RecordSink sink;
    SimConfig cfg;
    Controller ctl;

    explicit Rig(Topology view)
        : ctl(q, std::move(view), routes, cfg, sink,
              [](const LinkKey&) { return 7; }) {}

    void feed(const char* a, const char* b, int64_t sent, bool ok) {
        q.schedule(EventKind::probe_deadline, sent + cfg.probe_timeout_ms,
                   [this, k = LinkKey(a, b), sent, ok] {
                       ctl.observe_probe({k, sent, ok});
                   });
    }
};

} // namespace

TEST_CASE("score is the worst link ratio minus a cost penalty") {
    ProbeHistory h;
    auto all_ok = [&](const char* a, const char* b) {
        h[LinkKey(a, b)] = std::vector<bool>(10, true);
    };
    all_ok("A", "B");
    all_ok("B", "C");
    all_ok("C", "D");
    all_ok("D", "E");

    Path p{{"A", "B", "C", "D", "E"}, 4.0};
    CHECK(score_path(p, h, 5.0) == doctest::Approx(0.92));

    // five of ten probes lost on one link drags the whole path down
    h[LinkKey("B", "C")] = {true, false, true, false, true, false, true, false, true, false};
    Path p2{{"A", "B", "C"}, 5.0};
    CHECK(score_path(p2, h, 5.0) == doctest::Approx(0.40));

    // links without history count as healthy
    ProbeHistory empty;
    CHECK(score_path(p, empty, 5.0) == doctest::Approx(0.92));
    CHECK(score_path(Path{{"A", "B"}, 5.0}, empty, 5.0) == doctest::Approx(0.9));

    // same ratio, cheaper path scores at least as high
    CHECK(score_path(Path{{"A", "B"}, 2.0}, empty, 5.0) >
          score_path(Path{{"A", "B"}, 5.0}, empty, 5.0));
}

TEST_CASE("tied candidates spread flows by a byte-sum hash") {
    std::vector<Path> cands{{{"A", "B", "D"}, 2.0}, {{"A", "C", "D"}, 2.0}};
    ProbeHistory h;
    // 'f'+'1' = 151 -> second; 'f'+'2' = 152 -> first
    CHECK(select_active_path("f1", cands, h).str() == "A-C-D");
    CHECK(select_active_path("f2", cands, h).str() == "A-B-D");

    std::vector<Path> one{{{"A", "B"}, 1.0}};
    CHECK(select_active_path("f1", one, h).str() == "A-B");
}

TEST_CASE("an unhealthy link breaks the tie instead of the hash") {
    std::vector<Path> cands{{{"A", "B", "D"}, 2.0}, {{"A", "C", "D"}, 2.0}};
    ProbeHistory h;
    h[LinkKey("A", "B")] = {true, false, false, false};
    CHECK(select_active_path("f1", cands, h).str() == "A-C-D");
    CHECK(select_active_path("f2", cands, h).str() == "A-C-D");

    // partial tie at the top picks the first best, not the hash
    std::vector<Path> three{{{"A", "B", "D"}, 2.0},
                            {{"A", "C", "D"}, 2.0},
                            {{"A", "E", "D"}, 2.0}};
    ProbeHistory h2;
    h2[LinkKey("A", "E")] = {false, false};
    CHECK(select_active_path("f1", three, h2).str() == "A-B-D");
}

TEST_CASE("node classification: failed beats rerouted beats active") {
    auto t = th::canonical_topology();
    RouteTable before, after;
    route_flow(before, t, "f01", "S1", "S6");
    after = before;
    after["f01"].active = Path{{"S1", "S3", "S4", "S5", "R2", "S6"}, 5.0};
    t.set_node_state("S2", ElementState::Down);

    auto st = classify_node_status(t, before, after);
    CHECK(st.at("S2") == NodeStatus::Failed);
    CHECK(st.at("S3") == NodeStatus::Rerouted);
    CHECK(st.at("S4") == NodeStatus::Rerouted);
    CHECK(st.at("S5") == NodeStatus::Rerouted);
    CHECK(st.at("S1") == NodeStatus::Active); // shared endpoint
    CHECK(st.at("S6") == NodeStatus::Active);
    CHECK(st.at("R1") == NodeStatus::Active); // only on the old path
    CHECK(st.at("R2") == NodeStatus::Active); // on both paths
}

TEST_CASE("a node with every incident link down counts as failed") {
    auto t = th::canonical_topology();
    t.set_link_state("S1", "S2", ElementState::Down);
    t.set_link_state("S2", "R1", ElementState::Down);
    auto st = classify_node_status(t, {}, {});
    CHECK(st.at("S2") == NodeStatus::Failed);
    CHECK(st.at("S1") == NodeStatus::Active);
}

TEST_CASE("failed overrides rerouted when paths cross a dead node") {
    auto t = Topology::build(
        {{"A", NodeKind::Switch}, {"B", NodeKind::Switch}, {"C", NodeKind::Switch}},
        {{"A", "B", 1.0}, {"B", "C", 1.0}, {"A", "C", 1.0}});
    RouteTable before, after;
    before["f1"].active = Path{{"A", "B"}, 1.0};
    after["f1"].active = Path{{"A", "C", "B"}, 2.0};
    t.set_node_state("C", ElementState::Down);
    auto st = classify_node_status(t, before, after);
    CHECK(st.at("C") == NodeStatus::Failed);
    CHECK(st.at("A") == NodeStatus::Active);
}

TEST_CASE("miss threshold: two in a row detect, an ok in between resets") {
    Rig rig(th::canonical_topology());
    route_flow(rig.routes, rig.ctl.view(), "f01", "S1", "S6");

    rig.feed("R1", "S2", 5000, false);
    rig.feed("R1", "S2", 5025, true);
    rig.feed("R1", "S2", 5050, false);
    rig.feed("R1", "S2", 5075, false);
    rig.q.run_until(6000);

    auto dets = pick(rig.sink, RecordKind::detection);
    REQUIRE(dets.size() == 1);
    CHECK(dets[0].at == 5085); // second consecutive miss, not the first pair
    CHECK(dets[0].fault_id == 7);
    CHECK(dets[0].a == "R1");
    CHECK(dets[0].b == "S2");
    CHECK(rig.ctl.view().link("R1", "S2").state == ElementState::Down);

    CHECK(state_trace(rig.sink) ==
          std::vector<std::string>{"FaultSuspected", "Normal", "FaultSuspected",
                                   "FaultDetected", "Rerouting", "Recovered",
                                   "Normal"});
}

TEST_CASE("suspicion clears only when every miss counter is back to zero") {
    Rig rig(th::canonical_topology());
    rig.feed("R1", "S2", 0, false);  // suspected at 10
    rig.feed("R2", "S6", 25, false); // still suspected
    rig.feed("R1", "S2", 50, true);  // R2-S6 still dirty
    rig.feed("R2", "S6", 75, true);  // all clear at 85
    rig.q.run_until(1000);

    auto states = pick(rig.sink, RecordKind::state_change);
    REQUIRE(states.size() == 2);
    CHECK(states[0].text == "FaultSuspected");
    CHECK(states[0].at == 10);
    CHECK(states[1].text == "Normal");
    CHECK(states[1].at == 85);
    CHECK(pick(rig.sink, RecordKind::detection).empty());
}

TEST_CASE("detection plans affected flows in id order, two ms apart") {
    Rig rig(th::canonical_topology());
    const auto& t = rig.ctl.view();
    route_flow(rig.routes, t, "f01", "S1", "S6");
    route_flow(rig.routes, t, "f02", "S1", "R1");
    route_flow(rig.routes, t, "f03", "S1", "S2"); // does not use R1-S2

    rig.feed("R1", "S2", 0, false);
    rig.feed("R1", "S2", 25, false); // detection at 35
    rig.q.run_until(1000);

    auto decs = pick(rig.sink, RecordKind::decision);
    REQUIRE(decs.size() == 2);
    CHECK(decs[0].flow == "f01");
    CHECK(decs[0].decision == Decision::backup);
    CHECK(decs[0].text == "S1-S3-S4-S5-R2-S6");
    CHECK(decs[1].flow == "f02");
    CHECK(decs[1].decision == Decision::backup);

    auto commits = pick(rig.sink, RecordKind::commit);
    REQUIRE(commits.size() == 2);
    CHECK(commits[0].at == 40); // detection + proc delay
    CHECK(commits[0].flow == "f01");
    CHECK(commits[1].at == 42); // serialized per-flow slot
    CHECK(commits[1].flow == "f02");

    CHECK(rig.routes["f01"].active->str() == "S1-S3-S4-S5-R2-S6");
    CHECK(rig.routes["f01"].last_commit_at == 40);
    CHECK_FALSE(rig.routes["f01"].pending_action.has_value());
    CHECK(rig.routes["f03"].active->str() == "S1-S2"); // untouched

    auto states = state_trace(rig.sink);
    CHECK(states == std::vector<std::string>{"FaultSuspected", "FaultDetected",
                                             "Rerouting", "Recovered", "Normal"});
    auto recs = pick(rig.sink, RecordKind::state_change);
    CHECK(recs.back().at == 42); // normal again at the last commit
}

TEST_CASE("backup is rejected once the view distrusts any of its links") {
    // A-B direct, A-C-B the designated backup, A-D-B an expensive spare
    auto t = Topology::build({{"A", NodeKind::Switch},
                              {"B", NodeKind::Switch},
                              {"C", NodeKind::Switch},
                              {"D", NodeKind::Switch}},
                             {{"A", "B", 1.0},
                              {"A", "C", 1.0},
                              {"C", "B", 1.0},
                              {"A", "D", 5.0},
                              {"D", "B", 5.0}});
    Rig rig(t);
    route_flow(rig.routes, t, "f1", "A", "B");
    REQUIRE(rig.routes["f1"].backup->str() == "A-C-B");

    // first outage on A-C touches no flow but poisons the backup
    rig.feed("A", "C", 0, false);
    rig.feed("A", "C", 25, false);
    // then the primary dies
    rig.feed("A", "B", 50, false);
    rig.feed("A", "B", 75, false);
    rig.q.run_until(1000);

    auto decs = pick(rig.sink, RecordKind::decision);
    REQUIRE(decs.size() == 1);
    CHECK(decs[0].decision == Decision::recompute);
    CHECK(decs[0].text == "A-D-B");
    CHECK(rig.routes["f1"].active->str() == "A-D-B");
}

TEST_CASE("a detection with nothing to reroute recovers on the spot") {
    Rig rig(th::canonical_topology());
    route_flow(rig.routes, rig.ctl.view(), "f01", "S1", "S6");

    rig.feed("S3", "S4", 0, false);
    rig.feed("S3", "S4", 25, false);
    rig.q.run_until(1000);

    CHECK(pick(rig.sink, RecordKind::decision).empty());
    CHECK(pick(rig.sink, RecordKind::commit).empty());
    CHECK(state_trace(rig.sink) ==
          std::vector<std::string>{"FaultSuspected", "FaultDetected", "Rerouting",
                                   "Recovered", "Normal"});
    CHECK(rig.ctl.state() == ControllerState::Normal);
}

TEST_CASE("a second detection supersedes in-flight plans") {
    Rig rig(th::canonical_topology());
    route_flow(rig.routes, rig.ctl.view(), "f01", "S1", "S6");

    rig.feed("R1", "S2", 0, false);
    rig.feed("R1", "S2", 25, false); // detected at 35, backup commit slot 40
    rig.feed("R2", "S6", 0, false);
    rig.feed("R2", "S6", 25, false); // detected at 35 too, right after
    rig.q.run_until(1000);

    auto decs = pick(rig.sink, RecordKind::decision);
    REQUIRE(decs.size() == 2);
    CHECK(decs[0].decision == Decision::backup);  // plan against R1-S2
    CHECK(decs[1].decision == Decision::no_path); // replan against R2-S6

    CHECK(pick(rig.sink, RecordKind::commit).empty()); // slot-40 commit cancelled
    auto unroutes = pick(rig.sink, RecordKind::unroute);
    REQUIRE(unroutes.size() == 1);
    CHECK(unroutes[0].at == 42); // next free slot after the cancelled batch
    CHECK_FALSE(rig.routes["f01"].active.has_value());
    CHECK(rig.ctl.outstanding_actions() == 0);

    // the second detection added no FaultDetected/Rerouting records
    auto states = state_trace(rig.sink);
    CHECK(states == std::vector<std::string>{"FaultSuspected", "FaultDetected",
                                             "Rerouting", "Recovered", "Normal"});
    CHECK(pick(rig.sink, RecordKind::state_change).back().at == 42);
}

TEST_CASE("misses on a link the view already failed are ignored") {
    Rig rig(th::canonical_topology());
    route_flow(rig.routes, rig.ctl.view(), "f01", "S1", "S6");
    rig.feed("R1", "S2", 0, false);
    rig.feed("R1", "S2", 25, false);
    rig.feed("R1", "S2", 50, false);
    rig.feed("R1", "S2", 75, false);
    rig.q.run_until(1000);

    CHECK(pick(rig.sink, RecordKind::detection).size() == 1);
    CHECK(pick(rig.sink, RecordKind::decision).size() == 1);
}

TEST_CASE("an ok probe on a failed link repairs the view and retries") {
    Rig rig(th::canonical_topology());
    route_flow(rig.routes, rig.ctl.view(), "f03", "S1", "S2");

    // kill both of S2's links; f03 ends up unrouted
    rig.feed("R1", "S2", 0, false);
    rig.feed("R1", "S2", 25, false);
    rig.feed("S1", "S2", 50, false);
    rig.feed("S1", "S2", 75, false);
    rig.q.run_until(100);
    REQUIRE_FALSE(rig.routes["f03"].active.has_value());

    rig.feed("S1", "S2", 100, true);
    rig.q.run_until(1000);

    auto recov = pick(rig.sink, RecordKind::recovery);
    REQUIRE(recov.size() == 1);
    CHECK(recov[0].at == 110);
    CHECK(LinkKey(recov[0].a, recov[0].b).str() == "S1-S2");
    CHECK(rig.ctl.view().link("S1", "S2").state == ElementState::Up);

    auto decs = pick(rig.sink, RecordKind::decision);
    REQUIRE(decs.size() == 2); // no-path plan, then the recovery replan
    CHECK(decs[1].fault_id == -1);
    CHECK(decs[1].decision == Decision::recompute);
    CHECK(decs[1].text == "S1-S2");

    auto commits = pick(rig.sink, RecordKind::commit);
    REQUIRE(commits.size() == 1);
    CHECK(commits[0].at == 115); // repair + proc delay
    CHECK(commits[0].fault_id == -1);
    CHECK(rig.routes["f03"].active->str() == "S1-S2");
}

TEST_CASE("a repair that helps no one just fixes the view") {
    Rig rig(th::canonical_topology());
    route_flow(rig.routes, rig.ctl.view(), "f01", "S1", "S6");
    rig.feed("S3", "S4", 0, false);
    rig.feed("S3", "S4", 25, false);
    rig.feed("S3", "S4", 50, true);
    rig.q.run_until(1000);

    CHECK(pick(rig.sink, RecordKind::recovery).size() == 1);
    CHECK(pick(rig.sink, RecordKind::decision).empty());
    CHECK(rig.ctl.view().link("S3", "S4").state == ElementState::Up);
}

TEST_CASE("probe history keeps the last ten results per link") {
    Rig rig(th::canonical_topology());
    for (int i = 0; i < 12; ++i) rig.feed("R1", "R2", i * 25, true);
    rig.q.run_until(1000);
    const auto& w = rig.ctl.probe_history().at(LinkKey("R1", "R2"));
    CHECK(w.size() == 10);
    CHECK(std::count(w.begin(), w.end(), true) == 10);
}
