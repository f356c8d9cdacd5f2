#include "dcsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dcsim {

const EnbConfig& Scenario::lte() const {
    for (const EnbConfig& e : enbs) {
        if (e.kind == EnbKind::Lte) return e;
    }
    throw ScenarioError("scenario has no LTE eNB");
}

const EnbConfig* Scenario::enb(int id) const {
    for (const EnbConfig& e : enbs) {
        if (e.id == id) return &e;
    }
    return nullptr;
}

std::vector<int> Scenario::mmwave_ids() const {
    std::vector<int> ids;
    for (const EnbConfig& e : enbs) {
        if (e.kind == EnbKind::MmWave) ids.push_back(e.id);
    }
    return ids;
}

void Scenario::validate() const {
    int lte_count = 0;
    std::set<int> ids;
    for (const EnbConfig& e : enbs) {
        if (!ids.insert(e.id).second) {
            throw ScenarioError("duplicate eNB id " + std::to_string(e.id));
        }
        if (e.kind == EnbKind::Lte) ++lte_count;
        if (e.bandwidth_hz <= 0 || e.carrier_hz <= 0) {
            throw ScenarioError("eNB " + std::to_string(e.id) +
                                " needs positive carrier and bandwidth");
        }
        if (!std::isfinite(e.pos.x) || !std::isfinite(e.pos.y)) {
            throw ScenarioError("eNB " + std::to_string(e.id) +
                                " has non-finite position");
        }
    }
    if (lte_count != 1) {
        throw ScenarioError("scenario must declare exactly one LTE eNB, got " +
                            std::to_string(lte_count));
    }
    if (path.speed_mps <= 0) throw ScenarioError("UE speed must be positive");
    if (path.start.x == path.end.x && path.start.y == path.end.y) {
        throw ScenarioError("UE path start and end coincide");
    }
    for (const Building& b : buildings) {
        if (b.min_x >= b.max_x || b.min_y >= b.max_y) {
            throw ScenarioError("building corners must satisfy min < max");
        }
        for (const EnbConfig& e : enbs) {
            if (b.contains(e.pos)) {
                throw ScenarioError("eNB " + std::to_string(e.id) +
                                    " lies inside a building");
            }
        }
        if (segment_crosses_interior(path.start, path.end, b) ||
            b.contains(path.start) || b.contains(path.end)) {
            throw ScenarioError("UE path enters a building");
        }
    }
}

namespace {

EnbKind parse_kind(const std::string& word, int line_no) {
    if (word == "lte") return EnbKind::Lte;
    if (word == "mmwave") return EnbKind::MmWave;
    throw ScenarioError("line " + std::to_string(line_no) +
                        ": eNB kind must be lte or mmwave, got '" + word + "'");
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    bool have_path = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string directive;
        if (!(ls >> directive)) continue;

        if (directive == "enb") {
            EnbConfig e;
            std::string kind;
            double carrier_ghz = 0, bw_mhz = 0;
            if (!(ls >> e.id >> kind >> e.pos.x >> e.pos.y >> e.tx_power_dbm >>
                  carrier_ghz >> bw_mhz >> e.noise_figure_db >>
                  e.antenna_gain_db)) {
                throw ScenarioError("line " + std::to_string(line_no) +
                                    ": enb needs: id kind x y tx_dbm "
                                    "carrier_ghz bw_mhz nf_db gain_db");
            }
            e.kind = parse_kind(kind, line_no);
            e.carrier_hz = carrier_ghz * 1e9;
            e.bandwidth_hz = bw_mhz * 1e6;
            s.enbs.push_back(e);
        } else if (directive == "building") {
            Building b;
            if (!(ls >> b.min_x >> b.min_y >> b.max_x >> b.max_y)) {
                throw ScenarioError("line " + std::to_string(line_no) +
                                    ": building needs: min_x min_y max_x max_y");
            }
            s.buildings.push_back(b);
        } else if (directive == "path") {
            if (!(ls >> s.path.start.x >> s.path.start.y >> s.path.end.x >>
                  s.path.end.y >> s.path.speed_mps)) {
                throw ScenarioError("line " + std::to_string(line_no) +
                                    ": path needs: x0 y0 x1 y1 speed_mps");
            }
            have_path = true;
        } else {
            throw ScenarioError("line " + std::to_string(line_no) +
                                ": unknown directive '" + directive + "'");
        }
    }
    if (!have_path) throw ScenarioError("scenario declares no UE path");
    s.validate();
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_scenario(buf.str());
}

std::string default_scenario_text() {
    return
        "# Urban canyon crossing: one macro cell overhead, two mmWave cells\n"
        "# at the corridor ends. A low building band lines the street; alleys\n"
        "# between the blocks open short line-of-sight windows onto the cells.\n"
        "# enb: id kind x y tx_dbm carrier_ghz bw_mhz nf_db gain_db\n"
        "enb 1 lte    200 400  43  2.1  20    9  4.5\n"
        "enb 2 mmwave  50  70  30  28   1000  5  13\n"
        "enb 3 mmwave 350  70  30  28   1000  5  13\n"
        "building 95.00 15 104.08 18\n"
        "building 107.93 15 108.59 18\n"
        "building 112.70 15 113.44 18\n"
        "building 117.83 15 118.64 18\n"
        "building 123.33 15 124.19 18\n"
        "building 129.20 15 130.08 18\n"
        "building 135.43 15 136.32 18\n"
        "building 142.03 15 142.91 18\n"
        "building 149.00 15 149.84 18\n"
        "building 156.33 15 242.20 18\n"
        "building 248.77 15 249.53 18\n"
        "building 255.71 15 256.50 18\n"
        "building 262.29 15 263.10 18\n"
        "building 268.53 15 269.33 18\n"
        "building 274.43 15 275.20 18\n"
        "building 279.97 15 280.70 18\n"
        "building 285.17 15 285.83 18\n"
        "building 290.03 15 290.97 18\n"
        "building 294.88 15 295.73 18\n"
        "building 299.39 15 300.13 18\n"
        "building 303.55 15 304.17 18\n"
        "building 307.36 15 316.00 18\n"
        "path 100 -5 300 -5 2\n";
}

Scenario default_scenario() { return parse_scenario(default_scenario_text()); }

}  // namespace dcsim
