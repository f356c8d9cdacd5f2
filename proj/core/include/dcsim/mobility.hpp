#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dcsim/channel.hpp"
#include "dcsim/data_path.hpp"
#include "dcsim/event_queue.hpp"
#include "dcsim/messages.hpp"
#include "dcsim/params.hpp"
#include "dcsim/rng.hpp"
#include "dcsim/scenario.hpp"

namespace dcsim {

enum class Phase { Steady, Switching, HoPrep, HoExec, HoPathSwitch };
const char* phase_name(Phase p);

struct ControlEvent {
    SimTime time_us;
    const char* kind;
    int cell_a;
    int cell_b;
};

// LTE-anchored mobility coordinator for one UE. Collects mmWave SNR
// reports over X2, applies the outage/recovery/hysteresis decision rules,
// and runs the switch and handover procedures against the user plane.
class MobilityManager {
   public:
    MobilityManager(Simulator& sim, const Scenario& sc,
                    const SimulationParams& par, UserPlane& up,
                    ChannelModel& channel, RngStream& control);

    void initial_attach(int cell_id);

    // Called on every channel sample; emits the X2 report batch on report
    // period boundaries (reports start one full period into the run).
    void on_sample(const std::vector<SnrSample>& samples);

    Phase phase() const { return phase_; }
    int secondary_cell() const { return secondary_; }
    const SignalingCounters& signaling() const { return sig_; }
    const std::vector<ControlEvent>& event_log() const { return log_; }
    const std::vector<std::pair<SimTime, int>>& association() const {
        return assoc_;
    }
    std::uint64_t switches() const { return switches_; }
    std::uint64_t handovers() const { return handovers_; }
    std::uint64_t rlfs() const { return rlfs_; }
    std::uint64_t reports_sent() const { return reports_sent_; }

   private:
    struct ReportEntry {
        int cell;
        double snr_db = 0;
        SimTime reported_at = 0;
        bool seen = false;
    };

    void send_reports(const std::vector<SnrSample>& samples);
    void on_reports_arrive(std::vector<std::pair<int, double>> batch);
    void decide();

    void dc_switch(int target);
    void dc_switch_attempt(int attempt);

    void start_handover(int source, int target);
    void on_ho_request_arrive();
    void on_ho_ack_arrive();
    void reconf_attempt(int attempt);
    void on_reconf_delivered();
    void on_rach_done();
    void start_path_switch();
    void on_path_switch_request_arrive();
    void on_path_switch_ack_arrive();
    void declare_rlf();
    void on_rlf_rach_done();
    void finish_procedure(const char* kind);

    SigPath air_path(int cell_id) const;
    bool target_usable_now(int cell_id) const;
    void record(const char* kind, int a, int b);
    void set_serving(int cell_id);

    Simulator& sim_;
    const Scenario& sc_;
    const SimulationParams& par_;
    UserPlane& up_;
    ChannelModel& channel_;
    RngStream& control_;

    int lte_cell_;
    std::vector<ReportEntry> table_;
    Phase phase_ = Phase::Steady;
    int secondary_ = -1;

    // In-flight procedure context; valid while phase_ != Steady.
    int ho_source_ = -1;
    int ho_target_ = -1;
    bool ho_is_dc_ = false;
    bool recovering_ = false;
    int reconf_attempts_ = 0;
    int switch_target_ = -1;
    int switch_attempts_ = 0;

    SignalingCounters sig_;
    std::vector<ControlEvent> log_;
    std::vector<std::pair<SimTime, int>> assoc_;
    std::uint64_t switches_ = 0;
    std::uint64_t handovers_ = 0;
    std::uint64_t rlfs_ = 0;
    std::uint64_t reports_sent_ = 0;
};

}  // namespace dcsim
