#pragma once

#include <vector>

#include "dcsim/geometry.hpp"
#include "dcsim/rng.hpp"
#include "dcsim/scenario.hpp"
#include "dcsim/sim_time.hpp"

namespace dcsim {

// Free-space-style log-distance fits. Distances below 1 m clamp to 1 m.
double pathloss_db(EnbKind kind, bool los, double distance_m);

// Thermal noise floor: -174 dBm/Hz + 10*log10(B) + NF.
double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

double snr_db(const EnbConfig& enb, Position ue, bool los, double shadow_db);

struct ShadowingParams {
    double sigma_los_db = 0.35;
    double sigma_nlos_db = 1.2;  // mmWave NLOS; LTE uses sigma_los always
    double decorrelation_m = 0.5;
};

// Unit-variance AR(1) process in travelled distance. The raw state is scaled
// by the sigma for the current LOS condition at evaluation time, so crossing
// a LOS boundary changes the spread without discontinuing the process.
class ShadowingProcess {
public:
    explicit ShadowingProcess(double decorrelation_m)
        : decorrelation_m_(decorrelation_m) {}

    // Advances by delta_m metres using exactly one normal draw.
    double advance(double delta_m, RngStream& stream) {
        double rho = std::exp(-delta_m / decorrelation_m_);
        double z = stream.normal();
        if (!primed_) {
            state_ = z;
            primed_ = true;
        } else {
            state_ = rho * state_ + std::sqrt(1.0 - rho * rho) * z;
        }
        return state_;
    }

    double state() const { return state_; }

private:
    double decorrelation_m_;
    double state_ = 0.0;
    bool primed_ = false;
};

struct SnrSample {
    SimTime time = 0;
    int enb_id = 0;
    double snr_db = 0;
};

// Produces the SNR trace all consumers share. Draws exactly one normal per
// eNB per sample from the channel stream, in eNB declaration order, so the
// stream position depends only on (scenario, sample count) and never on what
// the control plane did with the samples.
class ChannelModel {
public:
    ChannelModel(const Scenario& scenario, const ShadowingParams& params);

    // Samples every eNB at the UE position for `time`. Results are also
    // retained as the current ground-truth link quality.
    const std::vector<SnrSample>& sample(SimTime time, RngStream& channel);

    double current_snr_db(int enb_id) const;
    bool current_los(int enb_id) const;
    Position ue_position(SimTime time) const { return scenario_->path.at(time); }

private:
    const Scenario* scenario_;
    ShadowingParams params_;
    std::vector<ShadowingProcess> shadow_;
    std::vector<double> snr_;
    std::vector<bool> los_;
    std::vector<SnrSample> last_samples_;
    double last_travel_m_ = 0.0;
    bool first_ = true;
};

}  // namespace dcsim
