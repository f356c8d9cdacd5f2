// Command-line front end: single runs, paired DC/HH batches, and
// speed-by-backhaul sweeps, with CSV output per run.

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcsim/experiment.hpp"

namespace {

void print_summary(const dcsim::RunSummary& s) {
    std::printf(
        "mode=%s seed=%" PRIu64
        " gross=%.3f Mbit/s net=%.3f Mbit/s mean_lat=%.3f ms "
        "max_win_lat=%.3f ms handovers=%" PRIu64 " switches=%" PRIu64
        " rlfs=%" PRIu64 " air=%.1f B/s\n",
        dcsim::mode_name(s.mode), s.seed, s.gross_mbps, s.net_mbps,
        s.mean_latency_ms, s.max_window_latency_ms, s.handovers, s.switches,
        s.rlfs, s.air_bytes_per_s);
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create directory " + dir + ": " +
                                 ec.message());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Deterministic LTE/mmWave mobility simulator: dual connectivity "
        "with fast switching versus hard handover"};

    std::string mode_str = "dc";
    bool paired = false;
    std::string config_path;
    std::string scenario_path;
    std::uint64_t seed = 1;
    int runs = 1;
    double x2_ms = 0;
    double s1_ms = 0;
    double ue_speed = 0;
    double duration_s = 0;
    std::vector<double> sweep_x2;
    std::vector<double> sweep_speed;
    std::string out_dir = "out";
    bool trace = false;

    auto* mode_opt =
        app.add_option("--mode", mode_str, "Mobility mode: dc or hh")
            ->check(CLI::IsMember({"dc", "hh"}));
    app.add_flag("--paired", paired,
                 "Run both modes on the same per-run seeds");
    app.add_option("--config", config_path, "key = value parameter file");
    app.add_option("--scenario", scenario_path,
                   "Scenario file (omit for the built-in canyon)");
    app.add_option("--seed", seed, "Master seed for per-run derivation");
    auto* runs_opt =
        app.add_option("--runs", runs, "Replicates per configuration")
            ->check(CLI::PositiveNumber);
    auto* x2_opt = app.add_option("--x2-latency-ms", x2_ms,
                                  "One-way X2 latency override")
                       ->check(CLI::NonNegativeNumber);
    auto* s1_opt = app.add_option("--s1-latency-ms", s1_ms,
                                  "One-way S1-MME latency override")
                       ->check(CLI::NonNegativeNumber);
    auto* speed_opt =
        app.add_option("--ue-speed", ue_speed, "UE speed in m/s")
            ->check(CLI::PositiveNumber);
    app.add_option("--sweep-x2", sweep_x2,
                   "Comma-separated X2 latencies (ms) to sweep")
        ->delimiter(',');
    app.add_option("--sweep-speed", sweep_speed,
                   "Comma-separated UE speeds (m/s) to sweep")
        ->delimiter(',');
    auto* dur_opt =
        app.add_option("--duration-s", duration_s,
                       "Horizon override (default: path traversal time)")
            ->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "Output directory root");
    app.add_flag("--trace", trace,
                 "Dump the event trace (time_us seq tag) to stdout; single "
                 "runs only");

    CLI11_PARSE(app, argc, argv);

    try {
        dcsim::Scenario sc = scenario_path.empty()
                                 ? dcsim::default_scenario()
                                 : dcsim::load_scenario_file(scenario_path);
        if (speed_opt->count() > 0) sc.path.speed_mps = ue_speed;
        sc.validate();

        dcsim::SimulationParams par;
        par.duration_us = sc.path.duration_us();
        if (!config_path.empty()) {
            dcsim::apply_config_file(par, config_path);
        }
        // The flag wins over the config file only when actually given.
        if (mode_opt->count() > 0) par.mode = dcsim::parse_mode(mode_str);
        if (x2_opt->count() > 0) par.x2_latency_us = dcsim::ms_to_us(x2_ms);
        if (s1_opt->count() > 0) {
            par.s1_mme_latency_us = dcsim::ms_to_us(s1_ms);
        }
        if (dur_opt->count() > 0) {
            par.duration_us = dcsim::sec_to_us(duration_s);
        }
        par.validate();
        ensure_out_dir(out_dir);

        if (!sweep_x2.empty() || !sweep_speed.empty()) {
            std::vector<double> speeds =
                sweep_speed.empty() ? std::vector<double>{sc.path.speed_mps}
                                    : sweep_speed;
            std::vector<double> x2s =
                sweep_x2.empty()
                    ? std::vector<double>{dcsim::us_to_ms(par.x2_latency_us)}
                    : sweep_x2;
            if (runs_opt->count() == 0) runs = 10;
            std::vector<dcsim::SweepPoint> points = dcsim::run_sweep(
                sc, par, seed, runs, speeds, x2s, out_dir);
            dcsim::write_sweep_csv(out_dir + "/sweep.csv", points);
            for (const dcsim::SweepPoint& p : points) {
                std::printf(
                    "s=%g m/s x2=%g ms %s: air=%.1f B/s lat=%.3f ms "
                    "gross=%.3f Mbit/s ho=%.1f sw=%.1f rlf=%.1f\n",
                    p.speed_mps, p.x2_latency_ms, dcsim::mode_name(p.mode),
                    p.air_bytes_per_s, p.mean_latency_ms, p.gross_mbps,
                    p.handovers, p.switches, p.rlfs);
            }
            return 0;
        }

        if (paired) {
            dcsim::BatchResult batch =
                dcsim::run_batch(sc, par, seed, runs, out_dir);
            for (const dcsim::RunSummary& s : batch.dc) print_summary(s);
            for (const dcsim::RunSummary& s : batch.hh) print_summary(s);
            std::vector<dcsim::RunSummary> all = batch.dc;
            all.insert(all.end(), batch.hh.begin(), batch.hh.end());
            dcsim::write_aggregate_csv(out_dir + "/aggregate.csv", all);
            return 0;
        }

        std::vector<dcsim::RunSummary> summaries;
        for (int i = 0; i < runs; ++i) {
            std::uint64_t run_seed = dcsim::replicate_seed(seed, i);
            dcsim::Simulation sim(sc, par, run_seed);
            if (trace && runs == 1) {
                sim.set_event_trace([](dcsim::SimTime t, std::uint64_t sq,
                                       const char* tag) {
                    std::printf("%" PRIu64 " %" PRIu64 " %s\n", t, sq, tag);
                });
            }
            dcsim::RunResult r = sim.run();
            std::string dir = out_dir + "/" +
                              dcsim::mode_name(par.mode) + "/run" +
                              std::to_string(i);
            dcsim::write_run_csvs(dir, r);
            summaries.push_back(r.summary);
        }
        for (const dcsim::RunSummary& s : summaries) print_summary(s);
        if (runs > 1) {
            dcsim::write_aggregate_csv(out_dir + "/aggregate.csv",
                                       summaries);
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
