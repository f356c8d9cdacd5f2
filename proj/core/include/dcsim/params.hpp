#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dcsim/channel.hpp"
#include "dcsim/phy.hpp"
#include "dcsim/sim_time.hpp"

namespace dcsim {

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class Mode { Dc, Hh };
enum class FlushPolicy { Reroute, Drain };

const char* mode_name(Mode m);
Mode parse_mode(std::string_view s);

// Everything tunable in one place. Times are integer microseconds; the
// config file accepts milliseconds for the latency knobs and converts.
struct SimulationParams {
    Mode mode = Mode::Dc;
    SimTime duration_us = 100 * kUsPerSec;

    SimTime epoch_us = 1000;
    SimTime sched_delay_us = 100;
    SimTime sample_period_us = 5000;
    SimTime report_period_us = 5000;
    int staleness_periods = 2;

    double eta = 0.65;
    double outage_threshold_db = -5.0;
    double recovery_margin_db = 2.0;
    double handover_hysteresis_db = 3.0;
    double bler_scale = 1.0;

    int max_retx = 3;
    std::size_t rlc_buffer_bytes = 10u * 1024u * 1024u;
    FlushPolicy flush_policy = FlushPolicy::Reroute;

    double rach_window_ms = 18.0;
    double rach_proc_ms = 3.0;
    int reconf_attempt_limit = 5;

    SimTime x2_latency_us = 1000;
    SimTime s1_mme_latency_us = 10000;
    SimTime s1_u_latency_us = 100;

    std::size_t packet_bytes = 1024;
    SimTime packet_interval_us = 80;
    SimTime metrics_window_us = 100 * kUsPerMs;

    ShadowingParams shadowing;

    PhyParams phy() const;
    void validate() const;
};

// Line-oriented "key = value" overlay onto defaults. '#' comments.
// Unknown keys are errors so typos fail loudly instead of silently
// running the defaults.
void apply_config(SimulationParams& p, std::string_view text);
void apply_config_file(SimulationParams& p, const std::string& path);

}  // namespace dcsim
