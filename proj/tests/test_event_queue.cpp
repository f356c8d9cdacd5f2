#include <string>
#include <vector>

#include "dcsim/event_queue.hpp"
#include "doctest.h"

using namespace dcsim;

TEST_CASE("events fire in time order") {
    Simulator sim;
    std::vector<int> order;
    sim.schedule_at(30, "c", [&] { order.push_back(3); });
    sim.schedule_at(10, "a", [&] { order.push_back(1); });
    sim.schedule_at(20, "b", [&] { order.push_back(2); });
    sim.run_until(100);
    CHECK(order == std::vector<int>{1, 2, 3});
    CHECK(sim.now() == 100);
}

TEST_CASE("same-time events fire in insertion order") {
    Simulator sim;
    std::vector<int> order;
    for (int i = 0; i < 8; ++i) {
        sim.schedule_at(5, "tie", [&order, i] { order.push_back(i); });
    }
    sim.run_until(5);
    CHECK(order == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("run_until horizon is inclusive") {
    Simulator sim;
    int fired = 0;
    sim.schedule_at(50, "edge", [&] { ++fired; });
    sim.schedule_at(51, "past", [&] { ++fired; });
    sim.run_until(50);
    CHECK(fired == 1);
    CHECK(sim.now() == 50);
    CHECK(sim.pending_count() == 1);
    sim.run_until(51);
    CHECK(fired == 2);
}

TEST_CASE("handlers can schedule inside the horizon") {
    Simulator sim;
    std::vector<SimTime> fires;
    sim.schedule_at(10, "outer", [&] {
        fires.push_back(sim.now());
        sim.schedule_in(5, "inner", [&] { fires.push_back(sim.now()); });
        // Same-timestamp insertion from a handler still fires this pass.
        sim.schedule_at(10, "same", [&] { fires.push_back(sim.now()); });
    });
    sim.run_until(20);
    CHECK(fires == std::vector<SimTime>{10, 10, 15});
}

TEST_CASE("scheduling into the past throws") {
    Simulator sim;
    sim.schedule_at(10, "x", [] {});
    sim.run_until(10);
    CHECK_THROWS_AS(sim.schedule_at(9, "late", [] {}), SchedulingError);
    // now() itself is fine: an event may hand work to the current instant.
    CHECK_NOTHROW(sim.schedule_at(10, "now", [] {}));
}

TEST_CASE("now is monotone across handlers") {
    Simulator sim;
    SimTime last = 0;
    bool ok = true;
    for (SimTime t : {40, 10, 30, 20, 10}) {
        sim.schedule_at(t, "m", [&] {
            ok = ok && sim.now() >= last;
            last = sim.now();
        });
    }
    sim.run_until(100);
    CHECK(ok);
    CHECK(last == 40);
}

TEST_CASE("counters track scheduling and processing") {
    Simulator sim;
    for (int i = 0; i < 5; ++i) sim.schedule_at(i, "n", [] {});
    sim.run_until(2);
    CHECK(sim.scheduled_count() == 5);
    CHECK(sim.processed_count() == 3);
    CHECK(sim.pending_count() == 2);
}

TEST_CASE("trace hook observes every processed event") {
    Simulator sim;
    std::vector<std::string> tags;
    std::vector<SimTime> times;
    sim.set_trace([&](SimTime t, std::uint64_t, const char* tag) {
        times.push_back(t);
        tags.push_back(tag);
    });
    sim.schedule_at(3, "beta", [] {});
    sim.schedule_at(1, "alpha", [] {});
    sim.run_until(10);
    CHECK(tags == std::vector<std::string>{"alpha", "beta"});
    CHECK(times == std::vector<SimTime>{1, 3});
}
