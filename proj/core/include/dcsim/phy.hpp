#pragma once

#include <cstdint>

#include "dcsim/rng.hpp"
#include "dcsim/scenario.hpp"
#include "dcsim/sim_time.hpp"

namespace dcsim {

struct PhyParams {
    double eta = 0.65;                 // spectral-efficiency derating
    double outage_threshold_db = -5.0;
    double bler_scale = 1.0;           // 0 disables transport losses
    SimTime sched_delay_us = 1000;     // per-burst air scheduling delay
    SimTime epoch_us = 1000;           // scheduling epoch
    double rach_window_ms = 5.0;       // uniform opportunity window
    double rach_proc_ms = 3.0;         // fixed processing after the grant
};

// Shannon-style rate with efficiency derating; 0 below the outage threshold.
double rate_from_snr(double snr_db, double bandwidth_hz, const PhyParams& p);

// Logistic block error probability, clamped to 1 below the outage threshold.
// bler_scale multiplies the logistic part (the clamp is unaffected).
double bler_from_snr(double snr_db, const PhyParams& p);

struct LinkState {
    int enb_id = 0;
    double snr_db = 0;
    double rate_bps = 0;
    double bler = 0;

    bool usable() const { return rate_bps > 0.0; }
};

LinkState make_link_state(const EnbConfig& enb, double snr_db,
                          const PhyParams& p);

// Whole microseconds needed to clock payload_bytes out at rate_bps.
SimTime serialization_us(std::uint64_t payload_bytes, double rate_bps);

// Non-contention random access: next opportunity uniform in [0, window) plus
// fixed processing. One uniform draw, taken from the stream the caller owns.
SimTime random_access_delay_us(RngStream& stream, const PhyParams& p);

}  // namespace dcsim
