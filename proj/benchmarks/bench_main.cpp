#include <benchmark/benchmark.h>

#include "dcsim/channel.hpp"
#include "dcsim/event_queue.hpp"
#include "dcsim/rng.hpp"
#include "dcsim/scenario.hpp"
#include "dcsim/simulation.hpp"

namespace {

// Schedule/fire cost with a queue that stays K deep, the shape the
// simulator produces (a few self-rescheduling series plus bursts).
void BM_EventQueue(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        dcsim::Simulator sim;
        std::uint64_t fired = 0;
        for (int i = 0; i < depth; ++i) {
            sim.schedule_at(static_cast<dcsim::SimTime>(i + 1), "seed",
                            [&] { ++fired; });
        }
        // Each handler reschedules itself 100 periods ahead.
        struct Series {
            dcsim::Simulator* sim;
            std::uint64_t* fired;
            void fire(dcsim::SimTime t) {
                ++*fired;
                if (t < 100000) {
                    sim->schedule_at(t + 100, "series", [this, t] {
                        fire(t + 100);
                    });
                }
            }
        };
        Series series{&sim, &fired};
        sim.schedule_at(1, "series", [&series] { series.fire(1); });
        sim.run_until(100000);
        benchmark::DoNotOptimize(fired);
    }
}
BENCHMARK(BM_EventQueue)->Arg(16)->Arg(256);

void BM_ChannelSample(benchmark::State& state) {
    dcsim::Scenario sc = dcsim::default_scenario();
    dcsim::ChannelModel model(sc, dcsim::ShadowingParams{});
    dcsim::RngStream stream(12345, "channel");
    dcsim::SimTime t = 0;
    for (auto _ : state) {
        const auto& samples = model.sample(t, stream);
        benchmark::DoNotOptimize(samples.data());
        t += 5000;
    }
}
BENCHMARK(BM_ChannelSample);

void BM_EndToEndSecond(benchmark::State& state) {
    dcsim::Scenario sc = dcsim::default_scenario();
    dcsim::SimulationParams par;
    par.mode = state.range(0) == 0 ? dcsim::Mode::Dc : dcsim::Mode::Hh;
    par.duration_us = dcsim::sec_to_us(1.0);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        dcsim::Simulation sim(sc, par, seed++);
        dcsim::RunResult r = sim.run();
        benchmark::DoNotOptimize(r.summary.delivered);
    }
}
BENCHMARK(BM_EndToEndSecond)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
