#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcsim/sim_time.hpp"

namespace dcsim {

// Thrown on attempts to schedule into the past. Always a logic error in the
// caller, never recoverable state.
class SchedulingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Discrete-event engine. Events fire in (time, insertion order); the clock
// only moves when an event is popped, so handlers observe a monotone now().
class Simulator {
public:
    using Handler = std::function<void()>;
    // (fire time, insertion seq, tag) for optional event tracing.
    using TraceFn = std::function<void(SimTime, std::uint64_t, const char*)>;

    SimTime now() const { return now_; }

    // Tags are expected to be string literals; the queue stores the pointer.
    void schedule_at(SimTime fire_at, const char* tag, Handler fn);

    void schedule_in(SimTime delay, const char* tag, Handler fn) {
        schedule_at(now_ + delay, tag, std::move(fn));
    }

    // Fires every event with fire_at <= end (inclusive), then parks the clock
    // at end. Events scheduled by handlers inside the horizon also fire.
    void run_until(SimTime end);

    std::uint64_t scheduled_count() const { return scheduled_; }
    std::uint64_t processed_count() const { return processed_; }
    std::size_t pending_count() const { return queue_.size(); }

    void set_trace(TraceFn fn) { trace_ = std::move(fn); }

private:
    struct Event {
        SimTime at;
        std::uint64_t seq;
        const char* tag;
        Handler fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.at != b.at) return a.at > b.at;
            return a.seq > b.seq;
        }
    };

    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t scheduled_ = 0;
    std::uint64_t processed_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    TraceFn trace_;
};

}  // namespace dcsim
