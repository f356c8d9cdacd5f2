#include "dcsim/data_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dcsim {

UserPlane::UserPlane(Simulator& sim, const Scenario& sc,
                     const SimulationParams& par, int initial_cell,
                     RngStream& phy_stream, DeliverySink& sink)
    : sim_(sim), par_(par), phy_(phy_stream), sink_(sink) {
    for (const EnbConfig& e : sc.enbs) {
        Rlc r;
        r.cell = e.id;
        r.cfg = e;
        rlcs_.push_back(std::move(r));
    }
    mode_ = par.mode;
    lte_cell_ = sc.lte().id;
    if (sc.enb(initial_cell) == nullptr) {
        throw ScenarioError("initial cell " + std::to_string(initial_cell) +
                            " not in scenario");
    }
    route_ = initial_cell;
    anchor_ = (mode_ == Mode::Dc) ? lte_cell_ : initial_cell;
}

UserPlane::Rlc& UserPlane::rlc(int cell_id) {
    for (Rlc& r : rlcs_) {
        if (r.cell == cell_id) return r;
    }
    throw std::out_of_range("no RLC for cell " + std::to_string(cell_id));
}

const UserPlane::Rlc& UserPlane::rlc(int cell_id) const {
    return const_cast<UserPlane*>(this)->rlc(cell_id);
}

void UserPlane::set_link(int cell_id, double snr_db) {
    sync_to(sim_.now());
    Rlc& r = rlc(cell_id);
    r.link = make_link_state(r.cfg, snr_db, par_.phy());
}

double UserPlane::link_rate_bps(int cell_id) const {
    return rlc(cell_id).link.rate_bps;
}
double UserPlane::link_bler(int cell_id) const {
    return rlc(cell_id).link.bler;
}
double UserPlane::link_snr_db(int cell_id) const {
    return rlc(cell_id).link.snr_db;
}

std::size_t UserPlane::queue_bytes(int cell_id) const {
    return rlc(cell_id).queue_bytes;
}

void UserPlane::set_route(int cell_id) {
    sync_to(sim_.now());
    if (cell_id == route_) return;
    int old = route_;
    route_ = cell_id;
    if (mode_ == Mode::Dc && par_.flush_policy == FlushPolicy::Reroute) {
        move_queue(old, route_);
    }
}

void UserPlane::set_anchor(int cell_id) {
    sync_to(sim_.now());
    anchor_ = cell_id;
}

void UserPlane::set_data_blocked(bool blocked) {
    sync_to(sim_.now());
    blocked_ = blocked;
}

void UserPlane::begin_forwarding(int from_cell, int to_cell) {
    sync_to(sim_.now());
    fwd_ = Forwarding{from_cell, to_cell};
    move_queue(from_cell, to_cell);
}

void UserPlane::end_forwarding() {
    sync_to(sim_.now());
    fwd_.reset();
    // Stranded sweep: anything still queued off the serving cell is sent
    // after the UE over X2.
    for (Rlc& r : rlcs_) {
        if (r.cell != route_ && !r.queue.empty()) move_queue(r.cell, route_);
    }
}

void UserPlane::sync_to(SimTime now) {
    if (now < synced_to_) {
        throw std::logic_error("user plane sync moving backwards");
    }
    synced_to_ = now;
    materialize(now);
    process_arrivals(now);
}

void UserPlane::materialize(SimTime now) {
    const SimTime interval = par_.packet_interval_us;
    const SimTime s1u = par_.s1_u_latency_us;
    while (true) {
        SimTime gen = next_sn_ * interval;
        if (gen >= par_.duration_us) break;
        SimTime pdcp_at = gen + s1u;
        if (pdcp_at > now) break;
        Packet p;
        p.sn = next_sn_;
        p.created_us = gen;
        int target;
        SimTime arrive;
        if (mode_ == Mode::Dc) {
            target = route_;
            arrive = (target == lte_cell_) ? pdcp_at : pdcp_at + par_.x2_latency_us;
        } else {
            target = anchor_;
            arrive = pdcp_at;
        }
        Rlc& r = rlc(target);
        auto it = r.pending.end();
        while (it != r.pending.begin() && std::prev(it)->arrive_us > arrive) {
            --it;
        }
        r.pending.insert(it, PendingArrival{std::move(p), arrive});
        ++pending_pkts_;
        ++next_sn_;
        ++materialized_;
    }
    std::uint64_t total = (par_.duration_us + interval - 1) / interval;
    std::uint64_t created = std::min<std::uint64_t>(now / interval + 1, total);
    s1u_in_flight_ = created - next_sn_;
}

void UserPlane::process_arrivals(SimTime now) {
    bool again = true;
    while (again) {
        again = false;
        for (Rlc& r : rlcs_) {
            while (!r.pending.empty() && r.pending.front().arrive_us <= now) {
                PendingArrival pa = std::move(r.pending.front());
                r.pending.pop_front();
                --pending_pkts_;
                dispose(std::move(pa.pkt), r.cell, pa.arrive_us);
                again = true;
            }
        }
    }
}

void UserPlane::dispose(Packet&& p, int cell, SimTime at) {
    if (mode_ == Mode::Hh) {
        if (fwd_ && cell == fwd_->from && fwd_->to != cell) {
            forward(std::move(p), fwd_->to, at);
            return;
        }
        if (cell == route_ || (fwd_ && cell == fwd_->to)) {
            enqueue(rlc(cell), std::move(p), at);
            return;
        }
        forward(std::move(p), route_, at);
    } else {
        if (cell == route_) {
            enqueue(rlc(cell), std::move(p), at);
            return;
        }
        forward(std::move(p), route_, at);
    }
}

void UserPlane::enqueue(Rlc& r, Packet&& p, SimTime at) {
    if (r.queue_bytes + par_.packet_bytes > par_.rlc_buffer_bytes) {
        ++dropped_buffer_;
        sink_.on_dropped(p, at, r.cell, DropReason::BufferFull);
        return;
    }
    r.queue.push_back(std::move(p));
    r.queue_bytes += par_.packet_bytes;
    ++queued_pkts_;
}

void UserPlane::forward(Packet&& p, int to_cell, SimTime depart_us) {
    p.rerouted = true;
    SimTime arrive = depart_us + par_.x2_latency_us;
    Rlc& r = rlc(to_cell);
    auto it = r.pending.end();
    while (it != r.pending.begin() && std::prev(it)->arrive_us > arrive) {
        --it;
    }
    r.pending.insert(it, PendingArrival{std::move(p), arrive});
    ++pending_pkts_;
}

void UserPlane::move_queue(int from_cell, int to_cell) {
    if (from_cell == to_cell) return;
    Rlc& src = rlc(from_cell);
    while (!src.queue.empty()) {
        Packet p = std::move(src.queue.front());
        src.queue.pop_front();
        src.queue_bytes -= par_.packet_bytes;
        --queued_pkts_;
        forward(std::move(p), to_cell, synced_to_);
    }
}

void UserPlane::on_epoch() {
    SimTime now = sim_.now();
    sync_to(now);
    if (mode_ == Mode::Hh) {
        if (blocked_) return;
        Rlc& r = rlc(route_);
        if (r.link.rate_bps > 0 && !r.queue.empty()) drain(r, now);
        return;
    }
    for (Rlc& r : rlcs_) {
        if (r.queue.empty()) continue;
        if (r.cell == route_) {
            if (r.link.rate_bps > 0) drain(r, now);
        } else if (par_.flush_policy == FlushPolicy::Reroute) {
            move_queue(r.cell, route_);
        } else if (r.link.rate_bps > 0) {
            drain(r, now);
        } else {
            // DRAIN policy, but the old leg went dark: forced reroute.
            move_queue(r.cell, route_);
        }
    }
}

void UserPlane::drain(Rlc& r, SimTime now) {
    const double budget_d = r.link.rate_bps * static_cast<double>(par_.epoch_us) / 8e6;
    std::size_t budget = static_cast<std::size_t>(budget_d);
    Burst b;
    b.cell = r.cell;
    std::size_t used = 0;
    // A backlogged burst can serialize past the epoch boundary; the next one
    // waits for the air interface instead of double-booking it. Without this
    // a short follow-up burst would complete, and deliver, before its
    // predecessor.
    SimTime t = std::max(now + par_.sched_delay_us, r.busy_until_us);
    while (!r.queue.empty() && used + par_.packet_bytes <= budget) {
        Packet p = std::move(r.queue.front());
        r.queue.pop_front();
        r.queue_bytes -= par_.packet_bytes;
        --queued_pkts_;
        used += par_.packet_bytes;
        t += serialization_us(par_.packet_bytes, r.link.rate_bps);
        b.pkts.push_back(std::move(p));
        b.done_us.push_back(t);
    }
    if (b.pkts.empty()) return;
    burst_pkts_ += b.pkts.size();
    double u = phy_.uniform();
    b.ok = u >= r.link.bler;
    SimTime complete = b.done_us.back();
    r.busy_until_us = complete;
    sim_.schedule_at(complete, "burst", [this, b = std::move(b)]() mutable {
        resolve(std::move(b), sim_.now());
    });
}

void UserPlane::resolve(Burst burst, SimTime now) {
    sync_to(now);
    const std::size_t n = burst.pkts.size();
    burst_pkts_ -= n;
    if (burst.ok) {
        delivered_ += n;
        for (std::size_t i = 0; i < n; ++i) {
            sink_.on_delivered(burst.pkts[i], burst.done_us[i], burst.cell);
        }
        return;
    }
    std::vector<Packet> survivors;
    survivors.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Packet& p = burst.pkts[i];
        p.retx += 1;
        if (p.retx > par_.max_retx) {
            ++dropped_retx_;
            sink_.on_dropped(p, now, burst.cell, DropReason::MaxRetx);
        } else {
            survivors.push_back(std::move(p));
        }
    }
    Rlc& r = rlc(burst.cell);
    for (auto it = survivors.rbegin(); it != survivors.rend(); ++it) {
        r.queue.push_front(std::move(*it));
        r.queue_bytes += par_.packet_bytes;
        ++queued_pkts_;
    }
    if (burst.cell == route_ || survivors.empty()) return;
    // The leg lost its serving role while the burst was in the air; its
    // survivors follow the UE. DC with DRAIN keeps the old leg alive.
    if (mode_ == Mode::Hh) {
        if (fwd_ && burst.cell == fwd_->from) {
            move_queue(burst.cell, fwd_->to);
        } else {
            move_queue(burst.cell, route_);
        }
    } else if (par_.flush_policy == FlushPolicy::Reroute) {
        move_queue(burst.cell, route_);
    }
}

void UserPlane::finalize() {
    sync_to(par_.duration_us);
}

bool UserPlane::conserved() const {
    return materialized_ == delivered_ + dropped_buffer_ + dropped_retx_ +
                                queued_pkts_ + pending_pkts_ + burst_pkts_;
}

}  // namespace dcsim
