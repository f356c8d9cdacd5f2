#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "dcsim/event_queue.hpp"
#include "dcsim/params.hpp"
#include "dcsim/phy.hpp"
#include "dcsim/rng.hpp"
#include "dcsim/scenario.hpp"

namespace dcsim {

struct Packet {
    std::uint64_t sn = 0;
    SimTime created_us = 0;
    int retx = 0;
    bool rerouted = false;
};

enum class DropReason { BufferFull, MaxRetx };

class DeliverySink {
   public:
    virtual ~DeliverySink() = default;
    virtual void on_delivered(const Packet& p, SimTime at, int cell_id) = 0;
    virtual void on_dropped(const Packet& p, SimTime at, int cell_id,
                            DropReason why) = 0;
};

// Downlink user plane for the single UE: CBR source, per-eNB RLC queues,
// X2 forwarding, and epoch-granular air transmission.
//
// The source is analytic: packets are materialized lazily, never as
// per-packet events. Queue state is exact at every sync point, and every
// public mutator syncs first, so control-plane actions always observe the
// queues as they stand at the current simulation time.
class UserPlane {
   public:
    UserPlane(Simulator& sim, const Scenario& sc, const SimulationParams& par,
              int initial_cell, RngStream& phy_stream, DeliverySink& sink);

    // Channel feed: updates the rate/BLER the cell's scheduler sees.
    void set_link(int cell_id, double snr_db);

    // Control-plane surface. DC: route is the PDCP leg. HH: route is the
    // serving cell.
    void set_route(int cell_id);
    void set_anchor(int cell_id);
    void set_data_blocked(bool blocked);
    void begin_forwarding(int from_cell, int to_cell);
    void end_forwarding();

    // Scheduler tick: drains eligible queues into air bursts.
    void on_epoch();

    // Run end: materializes the source tail so the books close.
    void finalize();

    int route_cell() const { return route_; }
    int anchor_cell() const { return anchor_; }
    bool data_blocked() const { return blocked_; }
    bool forwarding_active() const { return fwd_.has_value(); }

    double link_rate_bps(int cell_id) const;
    double link_bler(int cell_id) const;
    double link_snr_db(int cell_id) const;

    std::uint64_t generated() const { return materialized_ + s1u_in_flight_; }
    std::uint64_t materialized() const { return materialized_; }
    std::uint64_t delivered() const { return delivered_; }
    std::uint64_t dropped_buffer() const { return dropped_buffer_; }
    std::uint64_t dropped_retx() const { return dropped_retx_; }
    std::uint64_t queued_packets() const { return queued_pkts_; }
    std::uint64_t pending_packets() const { return pending_pkts_; }
    std::uint64_t burst_packets() const { return burst_pkts_; }
    std::size_t queue_bytes(int cell_id) const;

    // materialized = delivered + dropped + queued + pending + in-burst.
    // Holds at every sync point; checked fatally by tests.
    bool conserved() const;

   private:
    struct PendingArrival {
        Packet pkt;
        SimTime arrive_us;
    };
    struct Rlc {
        int cell;
        EnbConfig cfg;
        LinkState link{};
        std::deque<Packet> queue;
        std::size_t queue_bytes = 0;
        std::deque<PendingArrival> pending;
        // Air interface occupied until here; the next burst serializes after.
        SimTime busy_until_us = 0;
    };
    struct Burst {
        int cell;
        bool ok;
        std::vector<Packet> pkts;
        std::vector<SimTime> done_us;
    };
    struct Forwarding {
        int from;
        int to;
    };

    void sync_to(SimTime now);
    void materialize(SimTime now);
    void process_arrivals(SimTime now);
    void dispose(Packet&& p, int cell, SimTime at);
    void enqueue(Rlc& r, Packet&& p, SimTime at);
    void forward(Packet&& p, int to_cell, SimTime depart_us);
    void move_queue(int from_cell, int to_cell);
    void drain(Rlc& r, SimTime now);
    void resolve(Burst burst, SimTime now);
    Rlc& rlc(int cell_id);
    const Rlc& rlc(int cell_id) const;

    Simulator& sim_;
    const SimulationParams& par_;
    RngStream& phy_;
    DeliverySink& sink_;

    std::vector<Rlc> rlcs_;
    Mode mode_;
    int lte_cell_;
    int route_;
    int anchor_;
    bool blocked_ = false;
    std::optional<Forwarding> fwd_;

    std::uint64_t next_sn_ = 0;
    SimTime synced_to_ = 0;

    std::uint64_t materialized_ = 0;
    std::uint64_t s1u_in_flight_ = 0;
    std::uint64_t delivered_ = 0;
    std::uint64_t dropped_buffer_ = 0;
    std::uint64_t dropped_retx_ = 0;
    std::uint64_t queued_pkts_ = 0;
    std::uint64_t pending_pkts_ = 0;
    std::uint64_t burst_pkts_ = 0;
};

}  // namespace dcsim
