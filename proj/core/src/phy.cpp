#include "dcsim/phy.hpp"

#include <cmath>

namespace dcsim {

double rate_from_snr(double snr_db, double bandwidth_hz, const PhyParams& p) {
    if (snr_db < p.outage_threshold_db) return 0.0;
    double linear = std::pow(10.0, snr_db / 10.0);
    return p.eta * bandwidth_hz * std::log2(1.0 + linear);
}

double bler_from_snr(double snr_db, const PhyParams& p) {
    if (snr_db < p.outage_threshold_db) return 1.0;
    double b = 1.0 / (1.0 + std::exp(1.5 * (snr_db + 2.0)));
    b *= p.bler_scale;
    return b > 1.0 ? 1.0 : b;
}

LinkState make_link_state(const EnbConfig& enb, double snr_db,
                          const PhyParams& p) {
    return LinkState{enb.id, snr_db, rate_from_snr(snr_db, enb.bandwidth_hz, p),
                     bler_from_snr(snr_db, p)};
}

SimTime serialization_us(std::uint64_t payload_bytes, double rate_bps) {
    double us = static_cast<double>(payload_bytes) * 8.0 / rate_bps * 1e6;
    return static_cast<SimTime>(std::ceil(us));
}

SimTime random_access_delay_us(RngStream& stream, const PhyParams& p) {
    double opportunity_ms = stream.uniform() * p.rach_window_ms;
    return ms_to_us(opportunity_ms + p.rach_proc_ms);
}

}  // namespace dcsim
