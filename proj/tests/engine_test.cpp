#include "doctest.h"

#include "lansim/engine.hpp"
#include "lansim/errors.hpp"

#include <string>
#include <vector>

using namespace lansim;

TEST_CASE("events fire in time order, scheduling order on ties") {
    EventQueue q;
    std::string trace;
    q.schedule(EventKind::controller_action, 30, [&] { trace += "c"; });
    q.schedule(EventKind::packet_emit, 10, [&] { trace += "a"; });
    q.schedule(EventKind::packet_emit, 20, [&] { trace += "b1"; });
    q.schedule(EventKind::probe_send, 20, [&] { trace += "b2"; });
    q.schedule(EventKind::probe_send, 20, [&] { trace += "b3"; });

    auto fired = q.run_until(100);
    CHECK(trace == "ab1b2b3c");
    CHECK(q.now() == 100);
    CHECK(q.pending_count() == 0);

    REQUIRE(fired.size() == 5);
    CHECK(fired[0].time == 10);
    CHECK(fired[0].kind == EventKind::packet_emit);
    CHECK(fired[1].seq < fired[2].seq);
    CHECK(fired[2].seq < fired[3].seq);
    CHECK(fired[4].time == 30);
}

TEST_CASE("run_until fires inclusive bound and leaves the rest pending") {
    EventQueue q;
    int at20 = 0, at21 = 0;
    q.schedule(EventKind::packet_emit, 20, [&] { ++at20; });
    q.schedule(EventKind::packet_emit, 21, [&] { ++at21; });

    q.run_until(20);
    CHECK(at20 == 1);
    CHECK(at21 == 0);
    CHECK(q.now() == 20);
    CHECK(q.pending_count() == 1);

    q.run_until(21);
    CHECK(at21 == 1);
    CHECK(q.now() == 21);
}

TEST_CASE("cancel removes a pending event exactly once") {
    EventQueue q;
    int fired = 0;
    auto h = q.schedule(EventKind::controller_action, 50, [&] { ++fired; });
    auto keep = q.schedule(EventKind::controller_action, 50, [&] { ++fired; });

    CHECK(q.pending(h));
    CHECK(q.cancel(h));
    CHECK_FALSE(q.pending(h));
    CHECK_FALSE(q.cancel(h)); // second cancel is a no-op
    CHECK(q.pending(keep));

    q.run_until(100);
    CHECK(fired == 1);
    CHECK_FALSE(q.cancel(keep)); // already fired
}

TEST_CASE("scheduling in the past throws; now is allowed") {
    EventQueue q;
    q.schedule(EventKind::packet_emit, 5, [] {});
    q.run_until(10);
    CHECK_THROWS_AS(q.schedule(EventKind::packet_emit, 9, [] {}), ScheduleInPastError);
    int fired = 0;
    q.schedule(EventKind::packet_emit, 10, [&] { ++fired; });
    q.run_until(10);
    CHECK(fired == 1);
}

TEST_CASE("handlers can schedule at the current instant and still run") {
    EventQueue q;
    std::vector<int> order;
    q.schedule(EventKind::controller_action, 7, [&] {
        order.push_back(1);
        q.schedule(EventKind::controller_action, 7, [&] { order.push_back(2); });
        q.schedule(EventKind::controller_action, 8, [&] { order.push_back(3); });
    });
    q.run_until(8);
    CHECK(order == std::vector<int>{1, 2, 3});
}

TEST_CASE("handlers can cancel later events, even same-timestamp ones") {
    EventQueue q;
    int fired = 0;
    EventQueue::Handle victim{};
    victim = q.schedule(EventKind::controller_action, 4, [&] { ++fired; });
    // scheduled earlier but same time: runs first, kills the victim
    q.schedule(EventKind::controller_action, 3, [&] { q.cancel(victim); });
    q.run_until(10);
    CHECK(fired == 0);
}

TEST_CASE("two identically seeded runs replay the same fired-event trace") {
    auto drive = [] {
        EventQueue q;
        for (int i = 0; i < 50; ++i)
            q.schedule(i % 2 ? EventKind::packet_hop : EventKind::probe_send,
                       (i * 37) % 19, [] {});
        return q.run_until(25);
    };
    auto a = drive();
    auto b = drive();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].time == b[i].time);
        CHECK(a[i].seq == b[i].seq);
        CHECK(a[i].kind == b[i].kind);
    }
}
