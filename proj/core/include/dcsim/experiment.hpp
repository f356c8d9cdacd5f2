#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcsim/simulation.hpp"

namespace dcsim {

// Writes the per-run CSV family (summary, series, association, signaling,
// channel trace, control events) into dir, creating it if needed.
void write_run_csvs(const std::string& dir, const RunResult& r);

// One run; writes CSVs when out_dir is non-empty.
RunResult run_single(const Scenario& sc, const SimulationParams& par,
                     std::uint64_t seed, const std::string& out_dir = "");

struct PairResult {
    RunResult dc;
    RunResult hh;
};

// Both modes on the same seed. The channel stream depends only on
// (seed, scenario, sample count), so the pair shares one realization.
PairResult run_pair(const Scenario& sc, const SimulationParams& par,
                    std::uint64_t seed, const std::string& out_root = "");

struct BatchResult {
    std::vector<RunSummary> dc;
    std::vector<RunSummary> hh;
};

// N paired replicates with seeds derived from master_seed.
BatchResult run_batch(const Scenario& sc, const SimulationParams& par,
                      std::uint64_t master_seed, int runs,
                      const std::string& out_root = "");

struct Aggregate {
    double mean = 0;
    double stddev = 0;  // sample stddev; 0 when n < 2
};
Aggregate aggregate_of(const std::vector<double>& xs);

// One row per (metric, mode) with batch mean and sample stddev.
void write_aggregate_csv(const std::string& path,
                         const std::vector<RunSummary>& runs);

struct SweepPoint {
    double speed_mps = 0;
    double x2_latency_ms = 0;
    Mode mode = Mode::Dc;
    int runs = 0;
    double air_bytes_per_s = 0;
    double mean_latency_ms = 0;
    double gross_mbps = 0;
    double handovers = 0;
    double switches = 0;
    double rlfs = 0;
};

// Grid over UE speed and X2 one-way latency, both modes, `runs` replicates
// per cell. The horizon tracks the path traversal time for each speed so
// every cell covers the same ground distance.
std::vector<SweepPoint> run_sweep(const Scenario& sc,
                                  const SimulationParams& par,
                                  std::uint64_t master_seed, int runs,
                                  const std::vector<double>& speeds_mps,
                                  const std::vector<double>& x2_ms,
                                  const std::string& out_root = "");

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepPoint>& points);

}  // namespace dcsim
