#include "dcsim/simulation.hpp"

#include <stdexcept>

namespace dcsim {

Simulation::Simulation(Scenario scenario, SimulationParams params,
                       std::uint64_t seed)
    : sc_(std::move(scenario)),
      par_(params),
      seed_(seed),
      rngs_(seed),
      channel_(sc_, params.shadowing),
      metrics_(params) {
    sc_.validate();
    par_.validate();
}

int Simulation::pick_initial_cell() const {
    int best = -1;
    double best_snr = 0;
    for (int id : sc_.mmwave_ids()) {
        double s = channel_.current_snr_db(id);
        if (best < 0 || s > best_snr) {
            best = id;
            best_snr = s;
        }
    }
    double attach_floor =
        par_.outage_threshold_db + par_.recovery_margin_db;
    if (best >= 0 && best_snr >= attach_floor) return best;
    return sc_.lte().id;
}

void Simulation::track_outage(const std::vector<SnrSample>& samples) {
    bool any_mmwave = false;
    bool all_below = true;
    for (const SnrSample& s : samples) {
        const EnbConfig* e = sc_.enb(s.enb_id);
        if (e == nullptr || e->kind != EnbKind::MmWave) continue;
        any_mmwave = true;
        if (s.snr_db >= par_.outage_threshold_db) all_below = false;
    }
    bool outage = any_mmwave && all_below;
    if (outage && !in_outage_) ++outage_episodes_;
    in_outage_ = outage;
}

void Simulation::handle_sample() {
    const std::vector<SnrSample>& samples =
        channel_.sample(sim_.now(), rngs_.channel);
    for (const SnrSample& s : samples) {
        trace_.push_back(s);
        up_->set_link(s.enb_id, s.snr_db);
    }
    track_outage(samples);
    mob_->on_sample(samples);
    SimTime next = sim_.now() + par_.sample_period_us;
    if (next <= par_.duration_us) {
        sim_.schedule_at(next, "sample", [this] { handle_sample(); });
    }
}

void Simulation::handle_epoch() {
    up_->on_epoch();
    SimTime next = sim_.now() + par_.epoch_us;
    if (next <= par_.duration_us) {
        sim_.schedule_at(next, "epoch", [this] { handle_epoch(); });
    }
}

RunResult Simulation::run() {
    if (ran_) throw std::logic_error("Simulation::run is single use");
    ran_ = true;

    // The t=0 sample happens before any event fires so the initial
    // attachment is configured state, not a simulated procedure.
    const std::vector<SnrSample>& first =
        channel_.sample(0, rngs_.channel);
    for (const SnrSample& s : first) trace_.push_back(s);
    track_outage(first);

    int initial = pick_initial_cell();
    up_ = std::make_unique<UserPlane>(sim_, sc_, par_, initial, rngs_.phy,
                                      metrics_);
    for (const SnrSample& s : first) up_->set_link(s.enb_id, s.snr_db);
    mob_ = std::make_unique<MobilityManager>(sim_, sc_, par_, *up_,
                                             channel_, rngs_.control);
    mob_->initial_attach(initial);

    // Both series self-reschedule one period ahead. Seeding the sample
    // series first makes samples fire before epochs whenever the two share
    // a timestamp, so a drain always sees the freshest link state.
    if (par_.sample_period_us <= par_.duration_us) {
        sim_.schedule_at(par_.sample_period_us, "sample",
                         [this] { handle_sample(); });
    }
    if (par_.epoch_us <= par_.duration_us) {
        sim_.schedule_at(par_.epoch_us, "epoch", [this] { handle_epoch(); });
    }

    sim_.run_until(par_.duration_us);
    up_->finalize();
    if (!up_->conserved()) {
        throw std::logic_error("packet conservation violated");
    }

    RunResult r;
    RunSummary& s = r.summary;
    s.mode = par_.mode;
    s.seed = seed_;
    s.duration_s = us_to_sec(par_.duration_us);
    s.generated = up_->generated();
    s.delivered = up_->delivered();
    s.dropped_buffer = up_->dropped_buffer();
    s.dropped_retx = up_->dropped_retx();
    s.in_flight =
        s.generated - s.delivered - s.dropped_buffer - s.dropped_retx;
    s.gross_mbps = metrics_.gross_mbps();
    s.net_mbps = metrics_.net_mbps();
    s.mean_latency_ms = metrics_.mean_latency_ms();
    s.median_latency_ms = metrics_.median_latency_ms();
    s.p95_latency_ms = metrics_.p95_latency_ms();
    s.max_latency_ms = metrics_.max_latency_ms();
    s.max_window_latency_ms = metrics_.max_window_latency_ms();
    s.steady_median_window_latency_ms =
        metrics_.steady_median_window_latency_ms();
    s.switches = mob_->switches();
    s.handovers = mob_->handovers();
    s.rlfs = mob_->rlfs();
    s.reports = mob_->reports_sent();
    s.outage_episodes = outage_episodes_;
    const SignalingCounters& sig = mob_->signaling();
    s.air_bytes = sig.air_bytes();
    s.x2_bytes = sig.path_bytes(SigPath::X2);
    s.s1_bytes = sig.path_bytes(SigPath::S1Mme);
    s.air_bytes_per_s =
        s.duration_s > 0
            ? static_cast<double>(s.air_bytes) / s.duration_s
            : 0.0;

    r.windows = metrics_.windows();
    r.window_us = metrics_.window_us();
    r.channel_trace = std::move(trace_);
    r.events = mob_->event_log();
    r.association = mob_->association();
    r.signaling = sig;
    r.processed_events = sim_.processed_count();
    return r;
}

}  // namespace dcsim
