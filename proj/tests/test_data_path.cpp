#include <cstdint>
#include <set>
#include <vector>

#include "dcsim/data_path.hpp"
#include "dcsim/event_queue.hpp"
#include "dcsim/scenario.hpp"
#include "doctest.h"

using namespace dcsim;

namespace {

// One macro cell and two mmWave cells; links are set directly, the
// geometry only has to validate.
Scenario bench_scenario() {
    return parse_scenario(
        "enb 1 lte 0 1000 43 2.1 20 9 4\n"
        "enb 2 mmwave 0 50 30 28 1000 5 13\n"
        "enb 3 mmwave 200 50 30 28 1000 5 13\n"
        "path 0 0 200 0 2\n");
}

struct Delivery {
    std::uint64_t sn;
    SimTime at;
    int cell;
};

struct Drop {
    std::uint64_t sn;
    int retx;
    int cell;
    DropReason why;
};

struct RecordingSink : DeliverySink {
    std::vector<Delivery> delivered;
    std::vector<Drop> dropped;

    void on_delivered(const Packet& p, SimTime at, int cell) override {
        delivered.push_back({p.sn, at, cell});
    }
    void on_dropped(const Packet& p, SimTime, int cell,
                    DropReason why) override {
        dropped.push_back({p.sn, p.retx, cell, why});
    }
};

// Pumps scheduler epochs the way the full simulation would.
void pump_epochs(Simulator& sim, UserPlane& up, SimTime until, SimTime epoch) {
    for (SimTime t = epoch; t <= until; t += epoch) {
        sim.schedule_at(t, "epoch", [&up] { up.on_epoch(); });
    }
    sim.run_until(until);
}

}  // namespace

TEST_CASE("cbr source materializes the exact offered load") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.duration_us = sec_to_us(1.0);
    par.bler_scale = 0.0;
    RngStream phy(1, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 1, phy, sink);
    up.set_link(1, 30.0);  // ~130 Mbit/s, drains everything

    pump_epochs(sim, up, par.duration_us, par.epoch_us);
    up.finalize();

    // 1024 B / 80 us = 12.5 kpkt/s.
    CHECK(up.generated() == 12500);
    CHECK(up.conserved());
    CHECK(up.dropped_buffer() == 0);
    CHECK(up.dropped_retx() == 0);
    // The tail still inside the S1-U pipe or the queue is the only shortfall.
    CHECK(up.delivered() >= 12480);
    CHECK(up.delivered() + up.queued_packets() + up.pending_packets() +
              up.burst_packets() ==
          up.materialized());
}

TEST_CASE("s1u transport separates creation from arrival") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.duration_us = sec_to_us(1.0);
    RngStream phy(1, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 1, phy, sink);

    // Packet 0 is created at t=0 and reaches the PDCP at s1_u_latency.
    sim.schedule_at(50, "probe", [&] {
        up.set_link(1, 30.0);  // syncs to t=50
        CHECK(up.generated() == 1);
        CHECK(up.materialized() == 0);
    });
    sim.schedule_at(100 + 1, "probe2", [&] {
        up.set_link(1, 30.0);
        CHECK(up.materialized() >= 1);
    });
    sim.run_until(200);
}

TEST_CASE("drain budget is whole packets per epoch") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.duration_us = sec_to_us(0.2);
    par.bler_scale = 0.0;
    RngStream phy(1, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 1, phy, sink);

    const double snr = 2.8;
    up.set_link(1, snr);
    double rate = rate_from_snr(snr, 20e6, par.phy());
    auto budget_bytes = static_cast<std::uint64_t>(
        rate * static_cast<double>(par.epoch_us) / 8e6);
    auto pkts_per_epoch = budget_bytes / par.packet_bytes;
    REQUIRE(pkts_per_epoch == 2);  // the SNR was chosen for a 2-packet budget

    pump_epochs(sim, up, par.duration_us, par.epoch_us);

    // Offered load exceeds the budget, so every epoch ships exactly the
    // budget once the queue is primed.
    std::uint64_t epochs = par.duration_us / par.epoch_us;
    CHECK(up.delivered() + up.burst_packets() == pkts_per_epoch * epochs);
    CHECK(up.conserved());
}

TEST_CASE("single-leg delivery is FIFO when nothing is lost") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.mode = Mode::Hh;
    par.duration_us = sec_to_us(2.0);
    RngStream phy(9, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 2, phy, sink);

    up.set_link(2, 20.0);  // loss-free: delivery order is the queue order
    pump_epochs(sim, up, par.duration_us, par.epoch_us);

    REQUIRE(!sink.delivered.empty());
    for (std::size_t i = 1; i < sink.delivered.size(); ++i) {
        CHECK(sink.delivered[i - 1].sn < sink.delivered[i].sn);
        CHECK(sink.delivered[i - 1].at <= sink.delivered[i].at);
    }
    CHECK(sink.dropped.empty());
    CHECK(up.conserved());
}

TEST_CASE("retransmissions keep the queue sorted and drop after max_retx") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.mode = Mode::Hh;
    par.duration_us = sec_to_us(2.0);
    RngStream phy(9, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 2, phy, sink);

    // -4 dB sits inside the transport-loss band: bler ~0.95, rate ~314 Mbit/s.
    up.set_link(2, -4.0);
    pump_epochs(sim, up, par.duration_us, par.epoch_us);

    // A failed packet goes back to the head of the queue, so a retry can
    // land after higher sequence numbers that cleared in its first burst.
    // What must hold: no duplicates, and each burst (one resolve instant)
    // drains in queue order, which stays sorted because only head packets
    // ever re-enter at the head.
    REQUIRE(!sink.delivered.empty());
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < sink.delivered.size(); ++i) {
        CHECK(seen.insert(sink.delivered[i].sn).second);
        if (i > 0) {
            CHECK(sink.delivered[i - 1].at <= sink.delivered[i].at);
            if (sink.delivered[i - 1].at == sink.delivered[i].at) {
                CHECK(sink.delivered[i - 1].sn < sink.delivered[i].sn);
            }
        }
    }
    // The loss band must actually have produced failures and drops.
    REQUIRE(!sink.dropped.empty());
    for (const Drop& d : sink.dropped) {
        CHECK(d.why == DropReason::MaxRetx);
        CHECK(d.retx == par.max_retx + 1);
        CHECK(d.cell == 2);
    }
    CHECK(up.dropped_retx() == sink.dropped.size());
    CHECK(up.conserved());
}

TEST_CASE("queue caps at the buffer limit and tail-drops") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.duration_us = sec_to_us(1.0);
    RngStream phy(1, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 1, phy, sink);

    up.set_link(1, -20.0);  // outage: rate 0, nothing drains
    pump_epochs(sim, up, par.duration_us, par.epoch_us);
    up.finalize();

    CHECK(up.queue_bytes(1) == par.rlc_buffer_bytes);
    CHECK(up.dropped_buffer() > 0);
    CHECK(up.conserved());
    for (const Drop& d : sink.dropped) CHECK(d.why == DropReason::BufferFull);
    // 10 MiB / 1 KiB packets plus the drops accounts for every arrival.
    CHECK(up.queued_packets() == par.rlc_buffer_bytes / par.packet_bytes);
}

TEST_CASE("hard-handover forwarding redirects queue and arrivals") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.mode = Mode::Hh;
    par.duration_us = sec_to_us(1.0);
    par.bler_scale = 0.0;
    RngStream phy(1, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 2, phy, sink);  // anchor and route on cell 2

    up.set_link(2, -20.0);  // source dark, queue builds
    up.set_link(3, 20.0);

    SimTime flip = 50 * kUsPerMs;
    sim.schedule_at(flip, "fwd", [&] {
        CHECK(up.queue_bytes(2) > 0);
        up.begin_forwarding(2, 3);
        CHECK(up.queue_bytes(2) == 0);  // queue leaves immediately
        CHECK(up.forwarding_active());
    });
    // Route change when the UE arrives on the target, then settle.
    sim.schedule_at(flip + 10 * kUsPerMs, "route", [&] {
        up.set_route(3);
        up.end_forwarding();
        CHECK(!up.forwarding_active());
    });
    pump_epochs(sim, up, par.duration_us, par.epoch_us);
    up.finalize();

    CHECK(up.conserved());
    CHECK(up.dropped_retx() == 0);
    // Everything that made it out went over the target cell.
    REQUIRE(!sink.delivered.empty());
    for (const Delivery& d : sink.delivered) CHECK(d.cell == 3);
    // Forwarded packets carry the reroute mark: gross > net would show here;
    // at least one packet must have been forwarded from the source queue.
    CHECK(up.queue_bytes(2) == 0);
}

TEST_CASE("dc reroute moves the leg queue through the backhaul") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.mode = Mode::Dc;
    par.duration_us = sec_to_us(1.0);
    par.bler_scale = 0.0;
    RngStream phy(1, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 2, phy, sink);
    CHECK(up.anchor_cell() == 1);  // DC anchors at the macro cell

    up.set_link(2, -20.0);
    up.set_link(1, 30.0);

    SimTime flip = 50 * kUsPerMs;
    sim.schedule_at(flip, "switch", [&] {
        CHECK(up.queue_bytes(2) > 0);
        up.set_route(1);
        CHECK(up.queue_bytes(2) == 0);
        // The moved packets ride X2 and are not in any queue yet.
        CHECK(up.pending_packets() > 0);
    });
    sim.schedule_at(flip + par.x2_latency_us + 10, "landed", [&] {
        up.set_link(1, 30.0);  // sync
        CHECK(up.queue_bytes(1) > 0);
    });
    pump_epochs(sim, up, par.duration_us, par.epoch_us);
    up.finalize();

    CHECK(up.conserved());
    for (const Delivery& d : sink.delivered) CHECK(d.cell == 1);
}

TEST_CASE("blocking freezes the air without losing anything") {
    Simulator sim;
    Scenario sc = bench_scenario();
    SimulationParams par;
    par.mode = Mode::Hh;
    par.duration_us = sec_to_us(1.0);
    par.bler_scale = 0.0;
    RngStream phy(1, "phy");
    RecordingSink sink;
    UserPlane up(sim, sc, par, 1, phy, sink);
    up.set_link(1, 30.0);

    std::uint64_t at_block = 0;
    sim.schedule_at(200 * kUsPerMs, "block", [&] {
        up.set_data_blocked(true);
        at_block = up.delivered();
    });
    sim.schedule_at(400 * kUsPerMs, "probe", [&] {
        // Bursts in the air at the block may still land; nothing new starts.
        CHECK(up.delivered() <= at_block + up.burst_packets() + 64);
        CHECK(up.data_blocked());
        up.set_data_blocked(false);
    });
    pump_epochs(sim, up, par.duration_us, par.epoch_us);
    up.finalize();

    CHECK(up.conserved());
    CHECK(up.delivered() > at_block);  // resumed after the unblock
}
