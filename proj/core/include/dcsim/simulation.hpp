#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "dcsim/channel.hpp"
#include "dcsim/data_path.hpp"
#include "dcsim/event_queue.hpp"
#include "dcsim/metrics.hpp"
#include "dcsim/mobility.hpp"
#include "dcsim/params.hpp"
#include "dcsim/rng.hpp"
#include "dcsim/scenario.hpp"

namespace dcsim {

struct RunResult {
    RunSummary summary;
    std::vector<WindowStats> windows;
    SimTime window_us = 0;
    std::vector<SnrSample> channel_trace;
    std::vector<ControlEvent> events;
    std::vector<std::pair<SimTime, int>> association;
    SignalingCounters signaling;
    std::uint64_t processed_events = 0;
};

// One complete run: wires channel, user plane, control plane and metrics
// together, pumps the event loop to the horizon, and checks the packet
// conservation invariant before reporting. Single use.
class Simulation {
   public:
    Simulation(Scenario scenario, SimulationParams params,
               std::uint64_t seed);

    // Install before run(); receives (fire_time, seq, handler_tag) for
    // every processed event. Meant for determinism diagnostics.
    void set_event_trace(Simulator::TraceFn fn) {
        sim_.set_trace(std::move(fn));
    }

    RunResult run();

   private:
    void handle_sample();
    void handle_epoch();
    void track_outage(const std::vector<SnrSample>& samples);
    int pick_initial_cell() const;

    Scenario sc_;
    SimulationParams par_;
    std::uint64_t seed_;

    Simulator sim_;
    RngSet rngs_;
    ChannelModel channel_;
    MetricsCollector metrics_;
    std::unique_ptr<UserPlane> up_;
    std::unique_ptr<MobilityManager> mob_;

    std::vector<SnrSample> trace_;
    std::uint64_t outage_episodes_ = 0;
    bool in_outage_ = false;
    bool ran_ = false;
};

}  // namespace dcsim
