#include <cmath>
#include <vector>

#include "dcsim/metrics.hpp"
#include "doctest.h"

using namespace dcsim;

namespace {

SimulationParams window_params(double duration_s, double window_ms) {
    SimulationParams par;
    par.duration_us = sec_to_us(duration_s);
    par.metrics_window_us = static_cast<SimTime>(window_ms * 1000.0);
    par.validate();
    return par;
}

Packet pkt(std::uint64_t sn, SimTime created_us) {
    Packet p;
    p.sn = sn;
    p.created_us = created_us;
    return p;
}

}  // namespace

TEST_CASE("median: odd count picks the middle element") {
    CHECK(median_of({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median_of({5.0}) == 5.0);
    CHECK(median_of({9.0, 9.0, 1.0, 9.0, 9.0}) == 9.0);
}

TEST_CASE("median: even count averages the middle pair") {
    CHECK(median_of({4.0, 1.0, 3.0, 2.0}) == doctest::Approx(2.5));
    CHECK(median_of({1.0, 2.0}) == doctest::Approx(1.5));
}

TEST_CASE("median: empty input is zero") {
    CHECK(median_of({}) == 0.0);
}

TEST_CASE("percentile: nearest rank, ceil convention") {
    std::vector<double> v;
    for (int i = 1; i <= 20; ++i) v.push_back(static_cast<double>(i));
    // ceil(0.95 * 20) = 19, so the 19th smallest of 1..20.
    CHECK(percentile_of(v, 0.95) == 19.0);

    std::vector<double> w;
    for (int i = 1; i <= 100; ++i) w.push_back(static_cast<double>(i));
    CHECK(percentile_of(w, 0.95) == 95.0);

    CHECK(percentile_of({10.0, 20.0}, 0.50) == 10.0);
    CHECK(percentile_of({10.0, 20.0}, 1.00) == 20.0);
    CHECK(percentile_of({7.0, 3.0, 5.0}, 0.001) == 3.0);
    CHECK(percentile_of({}, 0.95) == 0.0);
}

TEST_CASE("percentile: input order does not matter") {
    std::vector<double> a{9.0, 1.0, 5.0, 3.0, 7.0};
    std::vector<double> b{1.0, 3.0, 5.0, 7.0, 9.0};
    CHECK(percentile_of(a, 0.6) == percentile_of(b, 0.6));
    CHECK(percentile_of(a, 0.6) == 5.0);
}

TEST_CASE("collector: windows tile the run and the end lands inside") {
    SimulationParams par = window_params(1.0, 100.0);
    MetricsCollector m(par);

    REQUIRE(m.windows().size() == 10);
    CHECK(m.window_us() == 100000);

    // One delivery per window, latency 1 ms each.
    for (int i = 0; i < 10; ++i) {
        SimTime created = static_cast<SimTime>(i) * 100000;
        m.on_delivered(pkt(static_cast<std::uint64_t>(i), created),
                       created + 1000, 1);
    }
    for (const WindowStats& w : m.windows()) {
        CHECK(w.delivered == 1);
        CHECK(w.bytes == par.packet_bytes);
        CHECK(w.mean_latency_ms() == doctest::Approx(1.0));
    }

    // A delivery at exactly t = duration belongs to the final window, not
    // to a phantom eleventh one.
    m.on_delivered(pkt(99, par.duration_us - 500), par.duration_us, 1);
    CHECK(m.windows().back().delivered == 2);
    CHECK(m.delivered() == 11);
}

TEST_CASE("collector: duplicate sequence numbers count gross, not net") {
    SimulationParams par = window_params(1.0, 100.0);
    MetricsCollector m(par);

    m.on_delivered(pkt(7, 0), 1000, 2);
    m.on_delivered(pkt(7, 0), 2000, 3);
    m.on_delivered(pkt(8, 0), 3000, 2);

    CHECK(m.delivered() == 3);
    CHECK(m.delivered_bytes() == 3 * par.packet_bytes);
    CHECK(m.net_bytes() == 2 * par.packet_bytes);
    CHECK(m.windows()[0].bytes == 3 * par.packet_bytes);
    CHECK(m.windows()[0].net_bytes == 2 * par.packet_bytes);

    // Throughput figures follow directly: bytes * 8 / duration.
    double gross = 3.0 * 1024.0 * 8.0 / 1.0 / 1e6;
    double net = 2.0 * 1024.0 * 8.0 / 1.0 / 1e6;
    CHECK(m.gross_mbps() == doctest::Approx(gross).epsilon(1e-12));
    CHECK(m.net_mbps() == doctest::Approx(net).epsilon(1e-12));
}

TEST_CASE("collector: latency distribution over all deliveries") {
    SimulationParams par = window_params(1.0, 100.0);
    MetricsCollector m(par);

    // Latencies 1, 2, 3, 10 ms.
    m.on_delivered(pkt(0, 0), 1000, 1);
    m.on_delivered(pkt(1, 0), 2000, 1);
    m.on_delivered(pkt(2, 0), 3000, 1);
    m.on_delivered(pkt(3, 0), 10000, 1);

    CHECK(m.mean_latency_ms() == doctest::Approx(4.0));
    CHECK(m.median_latency_ms() == doctest::Approx(2.5));
    CHECK(m.max_latency_ms() == doctest::Approx(10.0));
    // ceil(0.95 * 4) = 4th smallest.
    CHECK(m.p95_latency_ms() == doctest::Approx(10.0));
}

TEST_CASE("collector: window series metrics skip silent windows") {
    SimulationParams par = window_params(1.0, 100.0);
    MetricsCollector m(par);

    // Window 0: mean 2 ms. Window 3: mean 8 ms. Window 7: mean 4 ms.
    m.on_delivered(pkt(0, 0), 1000, 1);
    m.on_delivered(pkt(1, 0), 3000, 1);
    m.on_delivered(pkt(2, 300000), 308000, 1);
    m.on_delivered(pkt(3, 700000), 704000, 1);

    CHECK(m.max_window_latency_ms() == doctest::Approx(8.0));
    // Median of {2, 8, 4}: the seven empty windows contribute nothing.
    CHECK(m.steady_median_window_latency_ms() == doctest::Approx(4.0));
}

TEST_CASE("collector: drops are split by reason and leave latency alone") {
    SimulationParams par = window_params(1.0, 100.0);
    MetricsCollector m(par);

    m.on_delivered(pkt(0, 0), 5000, 1);
    m.on_dropped(pkt(1, 0), 6000, 1, DropReason::BufferFull);
    m.on_dropped(pkt(2, 0), 7000, 1, DropReason::BufferFull);
    m.on_dropped(pkt(3, 0), 8000, 1, DropReason::MaxRetx);

    CHECK(m.dropped(DropReason::BufferFull) == 2);
    CHECK(m.dropped(DropReason::MaxRetx) == 1);
    CHECK(m.delivered() == 1);
    CHECK(m.mean_latency_ms() == doctest::Approx(5.0));
    CHECK(m.max_latency_ms() == doctest::Approx(5.0));
}

TEST_CASE("collector: empty run reports zeros everywhere") {
    SimulationParams par = window_params(1.0, 100.0);
    MetricsCollector m(par);

    CHECK(m.delivered() == 0);
    CHECK(m.mean_latency_ms() == 0.0);
    CHECK(m.median_latency_ms() == 0.0);
    CHECK(m.p95_latency_ms() == 0.0);
    CHECK(m.max_latency_ms() == 0.0);
    CHECK(m.gross_mbps() == 0.0);
    CHECK(m.net_mbps() == 0.0);
    CHECK(m.max_window_latency_ms() == 0.0);
    CHECK(m.steady_median_window_latency_ms() == 0.0);
}
