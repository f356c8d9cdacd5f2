#include <string>

#include "dcsim/params.hpp"
#include "doctest.h"

using namespace dcsim;

TEST_CASE("defaults validate") {
    SimulationParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.mode == Mode::Dc);
    CHECK(p.duration_us == 100000000);
    CHECK(p.packet_bytes == 1024);
    CHECK(p.packet_interval_us == 80);
}

TEST_CASE("phy view mirrors the shared knobs") {
    SimulationParams p;
    p.eta = 0.7;
    p.outage_threshold_db = -6;
    p.bler_scale = 0.5;
    p.sched_delay_us = 250;
    p.epoch_us = 2000;
    p.rach_window_ms = 4;
    p.rach_proc_ms = 2;
    PhyParams ph = p.phy();
    CHECK(ph.eta == 0.7);
    CHECK(ph.outage_threshold_db == -6);
    CHECK(ph.bler_scale == 0.5);
    CHECK(ph.sched_delay_us == 250);
    CHECK(ph.epoch_us == 2000);
    CHECK(ph.rach_window_ms == 4);
    CHECK(ph.rach_proc_ms == 2);
}

TEST_CASE("mode names round trip") {
    CHECK(parse_mode("dc") == Mode::Dc);
    CHECK(parse_mode("hh") == Mode::Hh);
    CHECK(std::string(mode_name(Mode::Dc)) == "dc");
    CHECK(std::string(mode_name(Mode::Hh)) == "hh");
    CHECK_THROWS_AS(parse_mode("both"), ConfigError);
}

TEST_CASE("config overlay parses keys and units") {
    SimulationParams p;
    apply_config(p,
                 "# comment line\n"
                 "mode = hh\n"
                 "x2_latency_ms = 10\n"
                 "s1_mme_latency_ms = 5   # inline comment\n"
                 "duration_s = 20\n"
                 "max_retx = 5\n"
                 "flush_policy = drain\n"
                 "shadow_sigma_nlos_db = 2.5\n"
                 "\n");
    CHECK(p.mode == Mode::Hh);
    CHECK(p.x2_latency_us == 10000);
    CHECK(p.s1_mme_latency_us == 5000);
    CHECK(p.duration_us == 20000000);
    CHECK(p.max_retx == 5);
    CHECK(p.flush_policy == FlushPolicy::Drain);
    CHECK(p.shadowing.sigma_nlos_db == 2.5);
}

TEST_CASE("config overlay fails loudly") {
    SimulationParams p;
    CHECK_THROWS_AS(apply_config(p, "not_a_key = 3\n"), ConfigError);
    CHECK_THROWS_AS(apply_config(p, "eta\n"), ConfigError);
    CHECK_THROWS_AS(apply_config(p, "eta = fast\n"), ConfigError);
    CHECK_THROWS_AS(apply_config(p, "max_retx = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(apply_config(p, "flush_policy = toss\n"), ConfigError);
    // Valid syntax, invalid value: validate() runs at the end.
    CHECK_THROWS_AS(apply_config(p, "eta = 0\n"), ConfigError);
    CHECK_THROWS_AS(apply_config(p, "duration_s = 0\n"), ConfigError);
    CHECK_THROWS_AS(apply_config(p, "report_period_ms = 7\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_file(p, "/nonexistent.conf"), ConfigError);
}

TEST_CASE("validate guards the parameter envelope") {
    auto reject = [](auto&& mutate) {
        SimulationParams q;
        mutate(q);
        CHECK_THROWS_AS(q.validate(), ConfigError);
    };
    reject([](SimulationParams& q) { q.epoch_us = 0; });
    reject([](SimulationParams& q) { q.staleness_periods = 0; });
    reject([](SimulationParams& q) { q.bler_scale = 1.5; });
    reject([](SimulationParams& q) { q.rlc_buffer_bytes = 100; });
    reject([](SimulationParams& q) { q.reconf_attempt_limit = 0; });
    reject([](SimulationParams& q) { q.recovery_margin_db = -1; });
    reject([](SimulationParams& q) { q.shadowing.decorrelation_m = 0; });
    reject([](SimulationParams& q) {
        q.sample_period_us = 3000;  // report period no longer a multiple
    });
}
