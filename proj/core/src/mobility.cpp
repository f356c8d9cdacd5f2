#include "dcsim/mobility.hpp"

#include <utility>

#include "dcsim/phy.hpp"

namespace dcsim {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Steady: return "STEADY";
        case Phase::Switching: return "SWITCHING";
        case Phase::HoPrep: return "HO_PREP";
        case Phase::HoExec: return "HO_EXEC";
        case Phase::HoPathSwitch: return "HO_PATH_SWITCH";
    }
    return "UNKNOWN";
}

MobilityManager::MobilityManager(Simulator& sim, const Scenario& sc,
                                 const SimulationParams& par, UserPlane& up,
                                 ChannelModel& channel, RngStream& control)
    : sim_(sim),
      sc_(sc),
      par_(par),
      up_(up),
      channel_(channel),
      control_(control),
      lte_cell_(sc.lte().id) {
    for (int id : sc.mmwave_ids()) {
        ReportEntry e;
        e.cell = id;
        table_.push_back(e);
    }
}

void MobilityManager::initial_attach(int cell_id) {
    assoc_.emplace_back(sim_.now(), cell_id);
    if (par_.mode == Mode::Dc && cell_id != lte_cell_) secondary_ = cell_id;
    record("attach", cell_id, -1);
}

void MobilityManager::on_sample(const std::vector<SnrSample>& samples) {
    SimTime now = sim_.now();
    if (now == 0 || now % par_.report_period_us != 0) return;
    send_reports(samples);
}

void MobilityManager::send_reports(const std::vector<SnrSample>& samples) {
    std::vector<std::pair<int, double>> batch;
    for (const SnrSample& s : samples) {
        const EnbConfig* e = sc_.enb(s.enb_id);
        if (e == nullptr || e->kind != EnbKind::MmWave) continue;
        batch.emplace_back(s.enb_id, s.snr_db);
    }
    if (batch.empty()) return;
    sig_.record(MsgType::MeasReport, SigPath::X2, batch.size());
    reports_sent_ += batch.size();
    sim_.schedule_in(par_.x2_latency_us, "meas_report",
                     [this, batch = std::move(batch)]() mutable {
                         on_reports_arrive(std::move(batch));
                     });
}

void MobilityManager::on_reports_arrive(
    std::vector<std::pair<int, double>> batch) {
    SimTime now = sim_.now();
    for (const auto& [id, snr] : batch) {
        for (ReportEntry& e : table_) {
            if (e.cell == id) {
                e.snr_db = snr;
                e.reported_at = now;
                e.seen = true;
            }
        }
    }
    decide();
}

void MobilityManager::decide() {
    if (phase_ != Phase::Steady) return;
    SimTime now = sim_.now();
    SimTime horizon =
        par_.report_period_us * static_cast<SimTime>(par_.staleness_periods);

    int serving = up_.route_cell();
    int best = -1;
    double best_snr = 0;
    double serving_snr = 0;
    bool serving_valid = false;
    bool any_valid = false;
    bool all_below = true;
    for (const ReportEntry& e : table_) {
        if (!e.seen || e.reported_at + horizon < now) continue;
        any_valid = true;
        if (e.snr_db >= par_.outage_threshold_db) all_below = false;
        if (best < 0 || e.snr_db > best_snr) {
            best = e.cell;
            best_snr = e.snr_db;
        }
        if (e.cell == serving) {
            serving_snr = e.snr_db;
            serving_valid = true;
        }
    }
    if (!any_valid) return;

    bool on_lte = serving == lte_cell_;
    if (all_below) {
        // No mmWave leg is viable; fall back to the macro cell.
        if (!on_lte) {
            if (par_.mode == Mode::Dc) {
                dc_switch(lte_cell_);
            } else {
                start_handover(serving, lte_cell_);
            }
        }
        return;
    }

    if (on_lte) {
        if (best_snr <
            par_.outage_threshold_db + par_.recovery_margin_db) {
            return;  // recovered, but not by enough margin to go back yet
        }
        if (par_.mode == Mode::Hh) {
            start_handover(lte_cell_, best);
        } else if (best == secondary_) {
            dc_switch(best);
        } else {
            // The prepared secondary is not the cell we want; reconfigure
            // the secondary leg first. Data keeps flowing on the anchor.
            ho_is_dc_ = true;
            start_handover(secondary_ >= 0 ? secondary_ : lte_cell_, best);
        }
        return;
    }

    if (!serving_valid || best < 0 || best == serving) return;
    if (best_snr > serving_snr + par_.handover_hysteresis_db) {
        if (par_.mode == Mode::Dc) {
            // Secondary-to-secondary change: data hops to the anchor for
            // the duration, no air interruption.
            set_serving(lte_cell_);
            ho_is_dc_ = true;
        }
        start_handover(serving, best);
    }
}

void MobilityManager::dc_switch(int target) {
    if (target == up_.route_cell()) return;  // already there; no signaling
    phase_ = Phase::Switching;
    switch_target_ = target;
    record("switch_start", up_.route_cell(), target);
    dc_switch_attempt(1);
}

void MobilityManager::dc_switch_attempt(int attempt) {
    switch_attempts_ = attempt;
    sig_.record(MsgType::SwitchCmd, SigPath::AirLte);
    double rate = up_.link_rate_bps(lte_cell_);
    double bler = rate > 0.0 ? up_.link_bler(lte_cell_) : 1.0;
    double u = control_.uniform();
    if (u >= bler) {
        SimTime done =
            par_.sched_delay_us +
            serialization_us(message_bytes(MsgType::SwitchCmd), rate);
        sim_.schedule_in(done, "switch_cmd", [this] {
            // The UE applies the new routing the instant the command lands.
            set_serving(switch_target_);
            ++switches_;
            sig_.record(MsgType::SwitchAck, SigPath::AirLte);
            double up_rate = up_.link_rate_bps(lte_cell_);
            SimTime back =
                par_.sched_delay_us +
                serialization_us(message_bytes(MsgType::SwitchAck), up_rate);
            sim_.schedule_in(back, "switch_ack",
                             [this] { finish_procedure("switch_done"); });
        });
    } else {
        sim_.schedule_in(par_.epoch_us, "switch_cmd_retx",
                         [this, attempt] { dc_switch_attempt(attempt + 1); });
    }
}

void MobilityManager::start_handover(int source, int target) {
    phase_ = Phase::HoPrep;
    ho_source_ = source;
    ho_target_ = target;
    reconf_attempts_ = 0;
    record(ho_is_dc_ ? "dc_ho_start" : "ho_start", source, target);
    sig_.record(MsgType::HoRequest, SigPath::X2);
    sim_.schedule_in(par_.x2_latency_us, "ho_request",
                     [this] { on_ho_request_arrive(); });
}

void MobilityManager::on_ho_request_arrive() {
    sig_.record(MsgType::HoAck, SigPath::X2);
    sim_.schedule_in(par_.x2_latency_us, "ho_ack",
                     [this] { on_ho_ack_arrive(); });
}

void MobilityManager::on_ho_ack_arrive() {
    // Admission is secured. A hard handover starts forwarding its queue and
    // all new arrivals to the target now; a secondary change never touches
    // the anchor queue.
    if (!ho_is_dc_) up_.begin_forwarding(ho_source_, ho_target_);
    reconf_attempt(1);
}

void MobilityManager::reconf_attempt(int attempt) {
    reconf_attempts_ = attempt;
    // The reconfiguration rides the serving air interface for a hard
    // handover and the anchor air interface for a secondary change. When the
    // serving link is in outage the attempt is blind: counted, always lost.
    int cell = ho_is_dc_ ? lte_cell_ : ho_source_;
    sig_.record(MsgType::RrcReconf, air_path(cell));
    double rate = up_.link_rate_bps(cell);
    double bler = rate > 0.0 ? up_.link_bler(cell) : 1.0;
    double u = control_.uniform();
    if (u >= bler) {
        SimTime done =
            par_.sched_delay_us +
            serialization_us(message_bytes(MsgType::RrcReconf), rate);
        sim_.schedule_in(done, "rrc_reconf",
                         [this] { on_reconf_delivered(); });
    } else if (attempt >= par_.reconf_attempt_limit) {
        declare_rlf();
    } else {
        sim_.schedule_in(par_.epoch_us, "rrc_reconf_retx",
                         [this, attempt] { reconf_attempt(attempt + 1); });
    }
}

void MobilityManager::on_reconf_delivered() {
    record("reconf_ok", ho_is_dc_ ? lte_cell_ : ho_source_, ho_target_);
    phase_ = Phase::HoExec;
    // Detach-and-access gap: only a hard handover interrupts the data path.
    if (!ho_is_dc_) up_.set_data_blocked(true);
    sig_.record(MsgType::RachMsg, air_path(ho_target_));
    SimTime delay = random_access_delay_us(control_, par_.phy());
    sim_.schedule_in(delay, "rach", [this] { on_rach_done(); });
}

void MobilityManager::on_rach_done() {
    if (!target_usable_now(ho_target_)) {
        declare_rlf();
        return;
    }
    record("rach_ok", ho_target_, -1);
    if (ho_is_dc_) {
        // Secondary leg ready. Routing onto it is a local decision at the
        // anchor; nothing further crosses the air or the core.
        secondary_ = ho_target_;
        set_serving(ho_target_);
        ++handovers_;
        finish_procedure("dc_ho_complete");
        return;
    }
    set_serving(ho_target_);
    up_.set_data_blocked(false);
    start_path_switch();
}

void MobilityManager::start_path_switch() {
    phase_ = Phase::HoPathSwitch;
    sig_.record(MsgType::PathSwitchReq, SigPath::S1Mme);
    record("path_switch_req", up_.route_cell(), -1);
    sim_.schedule_in(par_.s1_mme_latency_us, "ps_req",
                     [this] { on_path_switch_request_arrive(); });
}

void MobilityManager::on_path_switch_request_arrive() {
    sig_.record(MsgType::PathSwitchAck, SigPath::S1Mme);
    sim_.schedule_in(par_.s1_mme_latency_us, "ps_ack",
                     [this] { on_path_switch_ack_arrive(); });
}

void MobilityManager::on_path_switch_ack_arrive() {
    up_.set_anchor(up_.route_cell());
    up_.end_forwarding();
    if (recovering_) {
        finish_procedure("rlf_complete");
    } else {
        ++handovers_;
        finish_procedure("ho_complete");
    }
}

void MobilityManager::declare_rlf() {
    ++rlfs_;
    record("rlf", ho_source_, ho_target_);
    if (ho_is_dc_) {
        // The anchor leg never moved and data kept flowing on it; the
        // failed secondary change just dissolves.
        finish_procedure("dc_ho_abort");
        return;
    }
    // Hard-handover failure: re-attach to the macro cell from scratch.
    recovering_ = true;
    phase_ = Phase::HoExec;
    up_.set_data_blocked(true);
    sig_.record(MsgType::RachMsg, air_path(lte_cell_));
    SimTime delay = random_access_delay_us(control_, par_.phy());
    sim_.schedule_in(delay, "rlf_rach", [this] { on_rlf_rach_done(); });
}

void MobilityManager::on_rlf_rach_done() {
    set_serving(lte_cell_);
    up_.set_data_blocked(false);
    record("rlf_reattach", lte_cell_, -1);
    if (up_.anchor_cell() != lte_cell_) {
        start_path_switch();
    } else {
        up_.end_forwarding();
        finish_procedure("rlf_complete");
    }
}

void MobilityManager::finish_procedure(const char* kind) {
    record(kind, up_.route_cell(), up_.anchor_cell());
    phase_ = Phase::Steady;
    recovering_ = false;
    ho_is_dc_ = false;
    ho_source_ = -1;
    ho_target_ = -1;
    switch_target_ = -1;
}

SigPath MobilityManager::air_path(int cell_id) const {
    const EnbConfig* e = sc_.enb(cell_id);
    bool mmwave = e != nullptr && e->kind == EnbKind::MmWave;
    return mmwave ? SigPath::AirMmwave : SigPath::AirLte;
}

bool MobilityManager::target_usable_now(int cell_id) const {
    return channel_.current_snr_db(cell_id) >= par_.outage_threshold_db;
}

void MobilityManager::record(const char* kind, int a, int b) {
    log_.push_back(ControlEvent{sim_.now(), kind, a, b});
}

void MobilityManager::set_serving(int cell_id) {
    if (up_.route_cell() == cell_id) return;
    up_.set_route(cell_id);
    assoc_.emplace_back(sim_.now(), cell_id);
}

}  // namespace dcsim
