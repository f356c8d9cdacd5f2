#include "dcsim/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <stdexcept>

namespace dcsim {

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create directory " + dir + ": " +
                                 ec.message());
    }
}

struct MetricAccessor {
    const char* name;
    std::function<double(const RunSummary&)> get;
};

const std::vector<MetricAccessor>& metric_table() {
    static const std::vector<MetricAccessor> table = {
        {"gross_mbps", [](const RunSummary& s) { return s.gross_mbps; }},
        {"net_mbps", [](const RunSummary& s) { return s.net_mbps; }},
        {"mean_latency_ms",
         [](const RunSummary& s) { return s.mean_latency_ms; }},
        {"median_latency_ms",
         [](const RunSummary& s) { return s.median_latency_ms; }},
        {"p95_latency_ms",
         [](const RunSummary& s) { return s.p95_latency_ms; }},
        {"max_latency_ms",
         [](const RunSummary& s) { return s.max_latency_ms; }},
        {"max_window_latency_ms",
         [](const RunSummary& s) { return s.max_window_latency_ms; }},
        {"steady_median_window_latency_ms",
         [](const RunSummary& s) {
             return s.steady_median_window_latency_ms;
         }},
        {"switches",
         [](const RunSummary& s) { return static_cast<double>(s.switches); }},
        {"handovers",
         [](const RunSummary& s) {
             return static_cast<double>(s.handovers);
         }},
        {"rlfs",
         [](const RunSummary& s) { return static_cast<double>(s.rlfs); }},
        {"outage_episodes",
         [](const RunSummary& s) {
             return static_cast<double>(s.outage_episodes);
         }},
        {"dropped_buffer",
         [](const RunSummary& s) {
             return static_cast<double>(s.dropped_buffer);
         }},
        {"dropped_retx",
         [](const RunSummary& s) {
             return static_cast<double>(s.dropped_retx);
         }},
        {"air_bytes_per_s",
         [](const RunSummary& s) { return s.air_bytes_per_s; }},
    };
    return table;
}

}  // namespace

void write_run_csvs(const std::string& dir, const RunResult& r) {
    ensure_dir(dir);
    std::string base = dir;
    if (!base.empty() && base.back() != '/') base += '/';
    write_summary_csv(base + "summary.csv", r.summary);
    write_throughput_csv(base + "throughput_series.csv", r.windows,
                         r.window_us);
    write_latency_csv(base + "latency_series.csv", r.windows, r.window_us);
    write_association_csv(base + "association.csv", r.association);
    write_rrc_traffic_csv(base + "rrc_traffic.csv", r.signaling,
                          r.summary.duration_s);
    write_channel_csv(base + "channel_trace.csv", r.channel_trace);
    write_events_csv(base + "events.csv", r.events);
}

RunResult run_single(const Scenario& sc, const SimulationParams& par,
                     std::uint64_t seed, const std::string& out_dir) {
    Simulation sim(sc, par, seed);
    RunResult r = sim.run();
    if (!out_dir.empty()) write_run_csvs(out_dir, r);
    return r;
}

PairResult run_pair(const Scenario& sc, const SimulationParams& par,
                    std::uint64_t seed, const std::string& out_root) {
    SimulationParams p = par;
    PairResult out;
    p.mode = Mode::Dc;
    out.dc = run_single(sc, p, seed,
                        out_root.empty() ? "" : out_root + "/dc");
    p.mode = Mode::Hh;
    out.hh = run_single(sc, p, seed,
                        out_root.empty() ? "" : out_root + "/hh");
    return out;
}

BatchResult run_batch(const Scenario& sc, const SimulationParams& par,
                      std::uint64_t master_seed, int runs,
                      const std::string& out_root) {
    BatchResult batch;
    SimulationParams p = par;
    for (int i = 0; i < runs; ++i) {
        std::uint64_t seed = replicate_seed(master_seed, i);
        std::string run = "/run" + std::to_string(i);
        p.mode = Mode::Dc;
        batch.dc.push_back(
            run_single(sc, p, seed,
                       out_root.empty() ? "" : out_root + "/dc" + run)
                .summary);
        p.mode = Mode::Hh;
        batch.hh.push_back(
            run_single(sc, p, seed,
                       out_root.empty() ? "" : out_root + "/hh" + run)
                .summary);
    }
    return batch;
}

Aggregate aggregate_of(const std::vector<double>& xs) {
    Aggregate a;
    if (xs.empty()) return a;
    double sum = 0;
    for (double x : xs) sum += x;
    a.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return a;
    double ss = 0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return a;
}

void write_aggregate_csv(const std::string& path,
                         const std::vector<RunSummary>& runs) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    std::fprintf(f, "metric,mode,runs,mean,stddev\n");
    for (Mode mode : {Mode::Dc, Mode::Hh}) {
        std::vector<const RunSummary*> subset;
        for (const RunSummary& s : runs) {
            if (s.mode == mode) subset.push_back(&s);
        }
        if (subset.empty()) continue;
        for (const MetricAccessor& m : metric_table()) {
            std::vector<double> xs;
            xs.reserve(subset.size());
            for (const RunSummary* s : subset) xs.push_back(m.get(*s));
            Aggregate a = aggregate_of(xs);
            std::fprintf(f, "%s,%s,%zu,%.6f,%.6f\n", m.name,
                         mode_name(mode), subset.size(), a.mean, a.stddev);
        }
    }
    std::fclose(f);
}

std::vector<SweepPoint> run_sweep(const Scenario& sc,
                                  const SimulationParams& par,
                                  std::uint64_t master_seed, int runs,
                                  const std::vector<double>& speeds_mps,
                                  const std::vector<double>& x2_ms,
                                  const std::string& out_root) {
    std::vector<SweepPoint> points;
    for (double speed : speeds_mps) {
        Scenario s = sc;
        s.path.speed_mps = speed;
        SimulationParams base = par;
        base.duration_us = s.path.duration_us();
        for (double x2 : x2_ms) {
            base.x2_latency_us = ms_to_us(x2);
            std::string dir;
            if (!out_root.empty()) {
                char label[64];
                std::snprintf(label, sizeof label, "x2_%gms_s%gmps", x2,
                              speed);
                dir = out_root + "/" + label;
            }
            BatchResult batch =
                run_batch(s, base, master_seed, runs, dir);
            if (!dir.empty()) {
                std::vector<RunSummary> all = batch.dc;
                all.insert(all.end(), batch.hh.begin(), batch.hh.end());
                write_aggregate_csv(dir + "/aggregate.csv", all);
            }
            for (Mode mode : {Mode::Dc, Mode::Hh}) {
                const std::vector<RunSummary>& rs =
                    mode == Mode::Dc ? batch.dc : batch.hh;
                SweepPoint pt;
                pt.speed_mps = speed;
                pt.x2_latency_ms = x2;
                pt.mode = mode;
                pt.runs = static_cast<int>(rs.size());
                std::vector<double> air, lat, gross, ho, sw, rlf;
                for (const RunSummary& r : rs) {
                    air.push_back(r.air_bytes_per_s);
                    lat.push_back(r.mean_latency_ms);
                    gross.push_back(r.gross_mbps);
                    ho.push_back(static_cast<double>(r.handovers));
                    sw.push_back(static_cast<double>(r.switches));
                    rlf.push_back(static_cast<double>(r.rlfs));
                }
                pt.air_bytes_per_s = aggregate_of(air).mean;
                pt.mean_latency_ms = aggregate_of(lat).mean;
                pt.gross_mbps = aggregate_of(gross).mean;
                pt.handovers = aggregate_of(ho).mean;
                pt.switches = aggregate_of(sw).mean;
                pt.rlfs = aggregate_of(rlf).mean;
                points.push_back(pt);
            }
        }
    }
    return points;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepPoint>& points) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    std::fprintf(f,
                 "speed_mps,x2_latency_ms,mode,runs,air_bytes_per_s,"
                 "mean_latency_ms,gross_mbps,handovers,switches,rlfs\n");
    for (const SweepPoint& p : points) {
        std::fprintf(f, "%.3f,%.3f,%s,%d,%.6f,%.6f,%.6f,%.3f,%.3f,%.3f\n",
                     p.speed_mps, p.x2_latency_ms, mode_name(p.mode), p.runs,
                     p.air_bytes_per_s, p.mean_latency_ms, p.gross_mbps,
                     p.handovers, p.switches, p.rlfs);
    }
    std::fclose(f);
}

}  // namespace dcsim
