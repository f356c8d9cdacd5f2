#include "dcsim/params.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dcsim {

const char* mode_name(Mode m) { return m == Mode::Dc ? "dc" : "hh"; }

Mode parse_mode(std::string_view s) {
    if (s == "dc") return Mode::Dc;
    if (s == "hh") return Mode::Hh;
    throw ConfigError("mode must be dc or hh, got '" + std::string(s) + "'");
}

PhyParams SimulationParams::phy() const {
    PhyParams p;
    p.eta = eta;
    p.outage_threshold_db = outage_threshold_db;
    p.bler_scale = bler_scale;
    p.sched_delay_us = sched_delay_us;
    p.epoch_us = epoch_us;
    p.rach_window_ms = rach_window_ms;
    p.rach_proc_ms = rach_proc_ms;
    return p;
}

void SimulationParams::validate() const {
    auto fail = [](const std::string& why) { throw ConfigError(why); };
    if (duration_us == 0) fail("duration must be positive");
    if (epoch_us == 0) fail("epoch must be positive");
    if (sched_delay_us == 0) fail("sched_delay must be positive");
    if (sample_period_us == 0) fail("sample_period must be positive");
    if (report_period_us == 0) fail("report_period must be positive");
    if (report_period_us % sample_period_us != 0) {
        fail("report_period must be a multiple of sample_period");
    }
    if (staleness_periods < 1) fail("staleness_periods must be >= 1");
    if (eta <= 0 || eta > 2) fail("eta must be in (0, 2]");
    if (bler_scale < 0 || bler_scale > 1) fail("bler_scale must be in [0, 1]");
    if (max_retx < 0) fail("max_retx must be >= 0");
    if (rlc_buffer_bytes < packet_bytes) {
        fail("rlc_buffer_bytes must hold at least one packet");
    }
    if (rach_window_ms < 0 || rach_proc_ms < 0) {
        fail("random-access delays must be >= 0");
    }
    if (reconf_attempt_limit < 1) fail("reconf_attempt_limit must be >= 1");
    if (packet_bytes == 0) fail("packet_bytes must be positive");
    if (packet_interval_us == 0) fail("packet_interval must be positive");
    if (metrics_window_us == 0) fail("metrics_window must be positive");
    if (recovery_margin_db < 0) fail("recovery_margin_db must be >= 0");
    if (handover_hysteresis_db < 0) fail("handover_hysteresis_db must be >= 0");
    if (shadowing.sigma_los_db < 0 || shadowing.sigma_nlos_db < 0) {
        fail("shadowing sigmas must be >= 0");
    }
    if (shadowing.decorrelation_m <= 0) {
        fail("shadowing decorrelation distance must be positive");
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double num(const std::string& key, const std::string& value, int line_no) {
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError("line " + std::to_string(line_no) + ": " + key +
                          " expects a number, got '" + value + "'");
    }
    return v;
}

long integer(const std::string& key, const std::string& value, int line_no) {
    double v = num(key, value, line_no);
    long i = static_cast<long>(v);
    if (static_cast<double>(i) != v) {
        throw ConfigError("line " + std::to_string(line_no) + ": " + key +
                          " expects an integer, got '" + value + "'");
    }
    return i;
}

}  // namespace

void apply_config(SimulationParams& p, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string body = trim(line);
        if (body.empty()) continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value");
        }

        auto ms = [&] { return ms_to_us(num(key, value, line_no)); };
        auto d = [&] { return num(key, value, line_no); };
        auto i = [&] { return integer(key, value, line_no); };

        if (key == "mode") {
            p.mode = parse_mode(value);
        } else if (key == "duration_s") {
            p.duration_us = sec_to_us(d());
        } else if (key == "epoch_ms") {
            p.epoch_us = ms();
        } else if (key == "sched_delay_ms") {
            p.sched_delay_us = ms();
        } else if (key == "sample_period_ms") {
            p.sample_period_us = ms();
        } else if (key == "report_period_ms") {
            p.report_period_us = ms();
        } else if (key == "staleness_periods") {
            p.staleness_periods = static_cast<int>(i());
        } else if (key == "eta") {
            p.eta = d();
        } else if (key == "outage_threshold_db") {
            p.outage_threshold_db = d();
        } else if (key == "recovery_margin_db") {
            p.recovery_margin_db = d();
        } else if (key == "handover_hysteresis_db") {
            p.handover_hysteresis_db = d();
        } else if (key == "bler_scale") {
            p.bler_scale = d();
        } else if (key == "max_retx") {
            p.max_retx = static_cast<int>(i());
        } else if (key == "rlc_buffer_bytes") {
            p.rlc_buffer_bytes = static_cast<std::size_t>(i());
        } else if (key == "flush_policy") {
            if (value == "reroute") {
                p.flush_policy = FlushPolicy::Reroute;
            } else if (value == "drain") {
                p.flush_policy = FlushPolicy::Drain;
            } else {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": flush_policy must be reroute or drain");
            }
        } else if (key == "rach_window_ms") {
            p.rach_window_ms = d();
        } else if (key == "rach_proc_ms") {
            p.rach_proc_ms = d();
        } else if (key == "reconf_attempt_limit") {
            p.reconf_attempt_limit = static_cast<int>(i());
        } else if (key == "x2_latency_ms") {
            p.x2_latency_us = ms();
        } else if (key == "s1_mme_latency_ms") {
            p.s1_mme_latency_us = ms();
        } else if (key == "s1_u_latency_ms") {
            p.s1_u_latency_us = ms();
        } else if (key == "packet_bytes") {
            p.packet_bytes = static_cast<std::size_t>(i());
        } else if (key == "packet_interval_us") {
            p.packet_interval_us = static_cast<SimTime>(i());
        } else if (key == "metrics_window_ms") {
            p.metrics_window_us = ms();
        } else if (key == "shadow_sigma_los_db") {
            p.shadowing.sigma_los_db = d();
        } else if (key == "shadow_sigma_nlos_db") {
            p.shadowing.sigma_nlos_db = d();
        } else if (key == "shadow_decorrelation_m") {
            p.shadowing.decorrelation_m = d();
        } else {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
    }
    p.validate();
}

void apply_config_file(SimulationParams& p, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    apply_config(p, buf.str());
}

}  // namespace dcsim
