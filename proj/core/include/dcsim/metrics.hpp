#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dcsim/channel.hpp"
#include "dcsim/data_path.hpp"
#include "dcsim/messages.hpp"
#include "dcsim/mobility.hpp"
#include "dcsim/params.hpp"

namespace dcsim {

// Fixed-width tumbling window. Deliveries at the exact end of the run land
// in the last window rather than opening a new one.
struct WindowStats {
    std::uint64_t delivered = 0;
    std::uint64_t bytes = 0;
    std::uint64_t net_bytes = 0;
    std::uint64_t latency_sum_us = 0;
    SimTime latency_max_us = 0;

    double mean_latency_ms() const {
        if (delivered == 0) return 0.0;
        return static_cast<double>(latency_sum_us) /
               static_cast<double>(delivered) / 1000.0;
    }
};

class MetricsCollector : public DeliverySink {
   public:
    explicit MetricsCollector(const SimulationParams& par);

    void on_delivered(const Packet& p, SimTime at, int cell_id) override;
    void on_dropped(const Packet& p, SimTime at, int cell_id,
                    DropReason why) override;

    const std::vector<WindowStats>& windows() const { return windows_; }
    SimTime window_us() const { return window_us_; }

    std::uint64_t delivered() const { return delivered_; }
    std::uint64_t delivered_bytes() const { return delivered_bytes_; }
    std::uint64_t net_bytes() const { return net_bytes_; }
    std::uint64_t dropped(DropReason why) const;

    // Latency distribution over every delivered packet, in milliseconds.
    // Latency is end to end: creation at the source to delivery at the UE,
    // transport legs included. Drops contribute nothing.
    double mean_latency_ms() const;
    double median_latency_ms() const;
    double p95_latency_ms() const;
    double max_latency_ms() const;

    double gross_mbps() const;
    double net_mbps() const;

    // Peak of the per-window mean latencies, and the median of the same
    // series restricted to windows that delivered anything. The ratio of
    // the two is the "how bad does it spike" figure of merit.
    double max_window_latency_ms() const;
    double steady_median_window_latency_ms() const;

   private:
    WindowStats& window_at(SimTime at);

    SimTime window_us_;
    SimTime duration_us_;
    std::size_t packet_bytes_;
    std::vector<WindowStats> windows_;
    std::vector<SimTime> latencies_us_;
    std::vector<bool> seen_;
    std::uint64_t delivered_ = 0;
    std::uint64_t delivered_bytes_ = 0;
    std::uint64_t net_bytes_ = 0;
    std::uint64_t dropped_buffer_ = 0;
    std::uint64_t dropped_retx_ = 0;
};

// Headline numbers for one run, flattened for CSV output and aggregation.
struct RunSummary {
    Mode mode = Mode::Dc;
    std::uint64_t seed = 0;
    double duration_s = 0;

    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped_buffer = 0;
    std::uint64_t dropped_retx = 0;
    std::uint64_t in_flight = 0;

    double gross_mbps = 0;
    double net_mbps = 0;
    double mean_latency_ms = 0;
    double median_latency_ms = 0;
    double p95_latency_ms = 0;
    double max_latency_ms = 0;
    double max_window_latency_ms = 0;
    double steady_median_window_latency_ms = 0;

    std::uint64_t switches = 0;
    std::uint64_t handovers = 0;
    std::uint64_t rlfs = 0;
    std::uint64_t reports = 0;
    std::uint64_t outage_episodes = 0;

    std::uint64_t air_bytes = 0;
    std::uint64_t x2_bytes = 0;
    std::uint64_t s1_bytes = 0;
    double air_bytes_per_s = 0;
};

// Exact-median / nearest-rank conventions, pinned here so tests and
// documentation agree: median of an even count averages the middle pair;
// p95 takes the ceil(0.95 n)-th smallest.
double median_of(std::vector<double> v);
double percentile_of(std::vector<double> v, double fraction);

// CSV writers. All output is locale-independent and contains nothing
// derived from wall time, so identical runs produce identical bytes.
void write_summary_csv(const std::string& path, const RunSummary& s);
void write_throughput_csv(const std::string& path,
                          const std::vector<WindowStats>& windows,
                          SimTime window_us);
void write_latency_csv(const std::string& path,
                       const std::vector<WindowStats>& windows,
                       SimTime window_us);
void write_association_csv(
    const std::string& path,
    const std::vector<std::pair<SimTime, int>>& assoc);
void write_rrc_traffic_csv(const std::string& path,
                           const SignalingCounters& sig, double duration_s);
void write_channel_csv(const std::string& path,
                       const std::vector<SnrSample>& trace);
void write_events_csv(const std::string& path,
                      const std::vector<ControlEvent>& events);

}  // namespace dcsim
