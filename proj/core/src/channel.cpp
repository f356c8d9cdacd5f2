#include "dcsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcsim {

double pathloss_db(EnbKind kind, bool los, double distance_m) {
    double d = std::max(distance_m, 1.0);
    if (kind == EnbKind::MmWave) {
        if (los) return 61.4 + 20.0 * std::log10(d);
        return 72.0 + 29.2 * std::log10(d);
    }
    // Macro-cell fit takes its distance in kilometres.
    return 128.1 + 37.6 * std::log10(d / 1000.0);
}

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db) {
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double snr_db(const EnbConfig& enb, Position ue, bool los, double shadow_db) {
    double pl = pathloss_db(enb.kind, los, distance(enb.pos, ue));
    double floor = noise_floor_dbm(enb.bandwidth_hz, enb.noise_figure_db);
    return enb.tx_power_dbm + enb.antenna_gain_db - pl - shadow_db - floor;
}

ChannelModel::ChannelModel(const Scenario& scenario,
                           const ShadowingParams& params)
    : scenario_(&scenario), params_(params) {
    const std::size_t n = scenario.enbs.size();
    shadow_.assign(n, ShadowingProcess(params.decorrelation_m));
    snr_.assign(n, 0.0);
    los_.assign(n, true);
    last_samples_.reserve(n);
}

const std::vector<SnrSample>& ChannelModel::sample(SimTime time,
                                                   RngStream& channel) {
    Position ue = scenario_->path.at(time);
    // Total ground distance walked, not arc position: the shadowing keeps
    // decorrelating on the return legs of a ping-pong path.
    double travel = scenario_->path.speed_mps * us_to_sec(time);
    double delta_m = first_ ? 0.0 : travel - last_travel_m_;
    last_travel_m_ = travel;

    last_samples_.clear();
    for (std::size_t i = 0; i < scenario_->enbs.size(); ++i) {
        const EnbConfig& enb = scenario_->enbs[i];
        bool los = is_los(enb.pos, ue, scenario_->buildings);
        // The AR state stays unit-variance; LOS state only selects the
        // scale, so the draw sequence is independent of geometry outcomes.
        double unit = first_ ? shadow_[i].advance(0.0, channel)
                             : shadow_[i].advance(delta_m, channel);
        double sigma = params_.sigma_los_db;
        if (enb.kind == EnbKind::MmWave && !los) sigma = params_.sigma_nlos_db;
        double snr = snr_db(enb, ue, los, sigma * unit);
        snr_[i] = snr;
        los_[i] = los;
        last_samples_.push_back(SnrSample{time, enb.id, snr});
    }
    first_ = false;
    return last_samples_;
}

double ChannelModel::current_snr_db(int enb_id) const {
    for (std::size_t i = 0; i < scenario_->enbs.size(); ++i) {
        if (scenario_->enbs[i].id == enb_id) return snr_[i];
    }
    throw std::out_of_range("unknown enb id in current_snr_db");
}

bool ChannelModel::current_los(int enb_id) const {
    for (std::size_t i = 0; i < scenario_->enbs.size(); ++i) {
        if (scenario_->enbs[i].id == enb_id) return los_[i];
    }
    throw std::out_of_range("unknown enb id in current_los");
}

}  // namespace dcsim
