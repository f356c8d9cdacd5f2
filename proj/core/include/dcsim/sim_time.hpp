#pragma once

#include <cstdint>

namespace dcsim {

// Simulated time in integer microseconds. The finest protocol timescale in
// the model is the 80 us packet interarrival, so 1 us resolution is exact
// for every quantity we schedule and avoids float drift in comparisons.
using SimTime = std::uint64_t;

constexpr SimTime kUsPerMs = 1000;
constexpr SimTime kUsPerSec = 1000000;

constexpr SimTime ms_to_us(double ms) {
    return static_cast<SimTime>(ms * 1000.0 + 0.5);
}

constexpr SimTime sec_to_us(double s) {
    return static_cast<SimTime>(s * 1e6 + 0.5);
}

constexpr double us_to_ms(SimTime t) { return static_cast<double>(t) / 1000.0; }
constexpr double us_to_sec(SimTime t) { return static_cast<double>(t) / 1e6; }

}  // namespace dcsim
