#include "dcsim/event_queue.hpp"

#include <utility>

namespace dcsim {

void Simulator::schedule_at(SimTime fire_at, const char* tag, Handler fn) {
    if (fire_at < now_) {
        throw SchedulingError("schedule_at(" + std::to_string(fire_at) +
                              " us) is in the past of now=" +
                              std::to_string(now_) + " us, tag=" +
                              (tag ? tag : "?"));
    }
    queue_.push(Event{fire_at, next_seq_++, tag, std::move(fn)});
    ++scheduled_;
}

void Simulator::run_until(SimTime end) {
    if (end < now_) {
        throw SchedulingError("run_until(" + std::to_string(end) +
                              " us) is in the past of now=" +
                              std::to_string(now_) + " us");
    }
    while (!queue_.empty() && queue_.top().at <= end) {
        // Move the event out before firing: the handler may schedule and
        // reallocate the underlying heap.
        Event ev = std::move(const_cast<Event&>(queue_.top()));
        queue_.pop();
        now_ = ev.at;
        if (trace_) trace_(ev.at, ev.seq, ev.tag);
        ev.fn();
        ++processed_;
    }
    now_ = end;
}

}  // namespace dcsim
