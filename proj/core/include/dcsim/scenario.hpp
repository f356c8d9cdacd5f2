#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dcsim/geometry.hpp"
#include "dcsim/sim_time.hpp"

namespace dcsim {

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EnbKind { Lte, MmWave };

struct EnbConfig {
    int id = 0;
    EnbKind kind = EnbKind::Lte;
    Position pos;
    double tx_power_dbm = 30.0;
    double carrier_hz = 0;
    double bandwidth_hz = 0;
    double noise_figure_db = 0;
    double antenna_gain_db = 0;
};

// Straight-line constant-speed UE trajectory. The UE ping-pongs between the
// endpoints, so faster UEs cross the corridor more often in the same run.
struct UePath {
    Position start;
    Position end;
    double speed_mps = 2.0;

    double length_m() const { return distance(start, end); }

    SimTime duration_us() const {
        return sec_to_us(length_m() / speed_mps);
    }

    Position at(SimTime t) const {
        double len = length_m();
        if (len <= 0.0) return end;
        double travelled = std::fmod(speed_mps * us_to_sec(t), 2.0 * len);
        double s = travelled <= len ? travelled : 2.0 * len - travelled;
        double f = s / len;
        return {start.x + f * (end.x - start.x),
                start.y + f * (end.y - start.y)};
    }
};

struct Scenario {
    std::vector<EnbConfig> enbs;
    std::vector<Building> buildings;
    UePath path;

    const EnbConfig& lte() const;
    const EnbConfig* enb(int id) const;
    std::vector<int> mmwave_ids() const;

    // Throws ScenarioError on structural problems: not exactly one macro
    // cell, duplicate ids, an eNB inside a building, the path entering a
    // building, or a non-positive speed.
    void validate() const;
};

// Text format: one directive per line, '#' comments.
//   enb <id> lte|mmwave <x> <y> <tx_dbm> <carrier_ghz> <bw_mhz> <nf_db> <gain_db>
//   building <min_x> <min_y> <max_x> <max_y>
//   path <x0> <y0> <x1> <y1> <speed_mps>
Scenario parse_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

// Built-in single-UE urban canyon: one macro cell overhead, two mmWave
// cells at the corridor ends, a building band whose alleys open short
// line-of-sight windows onto them. Twin of scenarios/default.scn.
Scenario default_scenario();
std::string default_scenario_text();

}  // namespace dcsim
