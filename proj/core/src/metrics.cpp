#include "dcsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dcsim {

namespace {

// fopen wrapper that fails loudly; silent partial output is worse than an
// aborted run.
class CsvFile {
   public:
    explicit CsvFile(const std::string& path)
        : f_(std::fopen(path.c_str(), "wb")) {
        if (f_ == nullptr) {
            throw std::runtime_error("cannot open for writing: " + path);
        }
    }
    ~CsvFile() {
        if (f_ != nullptr) std::fclose(f_);
    }
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    std::FILE* get() { return f_; }

   private:
    std::FILE* f_;
};

unsigned long long ull(std::uint64_t v) {
    return static_cast<unsigned long long>(v);
}

}  // namespace

MetricsCollector::MetricsCollector(const SimulationParams& par)
    : window_us_(par.metrics_window_us),
      duration_us_(par.duration_us),
      packet_bytes_(par.packet_bytes) {
    std::size_t n = static_cast<std::size_t>(
        (duration_us_ + window_us_ - 1) / window_us_);
    if (n == 0) n = 1;
    windows_.resize(n);
}

WindowStats& MetricsCollector::window_at(SimTime at) {
    std::size_t idx = static_cast<std::size_t>(at / window_us_);
    if (idx >= windows_.size()) idx = windows_.size() - 1;
    return windows_[idx];
}

void MetricsCollector::on_delivered(const Packet& p, SimTime at, int) {
    SimTime lat = at - p.created_us;
    latencies_us_.push_back(lat);
    ++delivered_;
    delivered_bytes_ += packet_bytes_;

    WindowStats& w = window_at(at);
    ++w.delivered;
    w.bytes += packet_bytes_;
    w.latency_sum_us += lat;
    if (lat > w.latency_max_us) w.latency_max_us = lat;

    if (p.sn >= seen_.size()) seen_.resize(p.sn + 1, false);
    if (!seen_[p.sn]) {
        seen_[p.sn] = true;
        net_bytes_ += packet_bytes_;
        w.net_bytes += packet_bytes_;
    }
}

void MetricsCollector::on_dropped(const Packet&, SimTime, int,
                                  DropReason why) {
    if (why == DropReason::BufferFull) {
        ++dropped_buffer_;
    } else {
        ++dropped_retx_;
    }
}

std::uint64_t MetricsCollector::dropped(DropReason why) const {
    return why == DropReason::BufferFull ? dropped_buffer_ : dropped_retx_;
}

double MetricsCollector::mean_latency_ms() const {
    if (latencies_us_.empty()) return 0.0;
    double sum = 0;
    for (SimTime v : latencies_us_) sum += static_cast<double>(v);
    return sum / static_cast<double>(latencies_us_.size()) / 1000.0;
}

double MetricsCollector::median_latency_ms() const {
    std::vector<double> v(latencies_us_.begin(), latencies_us_.end());
    return median_of(std::move(v)) / 1000.0;
}

double MetricsCollector::p95_latency_ms() const {
    std::vector<double> v(latencies_us_.begin(), latencies_us_.end());
    return percentile_of(std::move(v), 0.95) / 1000.0;
}

double MetricsCollector::max_latency_ms() const {
    SimTime m = 0;
    for (SimTime v : latencies_us_) m = std::max(m, v);
    return static_cast<double>(m) / 1000.0;
}

double MetricsCollector::gross_mbps() const {
    double secs = us_to_sec(duration_us_);
    if (secs <= 0) return 0.0;
    return static_cast<double>(delivered_bytes_) * 8.0 / secs / 1e6;
}

double MetricsCollector::net_mbps() const {
    double secs = us_to_sec(duration_us_);
    if (secs <= 0) return 0.0;
    return static_cast<double>(net_bytes_) * 8.0 / secs / 1e6;
}

double MetricsCollector::max_window_latency_ms() const {
    double m = 0;
    for (const WindowStats& w : windows_) {
        m = std::max(m, w.mean_latency_ms());
    }
    return m;
}

double MetricsCollector::steady_median_window_latency_ms() const {
    std::vector<double> means;
    for (const WindowStats& w : windows_) {
        if (w.delivered > 0) means.push_back(w.mean_latency_ms());
    }
    return median_of(std::move(means));
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double percentile_of(std::vector<double> v, double fraction) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    double rank = std::ceil(fraction * static_cast<double>(v.size()));
    std::size_t idx = rank <= 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
    if (idx >= v.size()) idx = v.size() - 1;
    return v[idx];
}

void write_summary_csv(const std::string& path, const RunSummary& s) {
    CsvFile out(path);
    std::FILE* f = out.get();
    std::fprintf(f, "metric,value\n");
    std::fprintf(f, "mode,%s\n", mode_name(s.mode));
    std::fprintf(f, "seed,%llu\n", ull(s.seed));
    std::fprintf(f, "duration_s,%.6f\n", s.duration_s);
    std::fprintf(f, "generated,%llu\n", ull(s.generated));
    std::fprintf(f, "delivered,%llu\n", ull(s.delivered));
    std::fprintf(f, "dropped_buffer,%llu\n", ull(s.dropped_buffer));
    std::fprintf(f, "dropped_retx,%llu\n", ull(s.dropped_retx));
    std::fprintf(f, "in_flight,%llu\n", ull(s.in_flight));
    std::fprintf(f, "gross_mbps,%.6f\n", s.gross_mbps);
    std::fprintf(f, "net_mbps,%.6f\n", s.net_mbps);
    std::fprintf(f, "mean_latency_ms,%.6f\n", s.mean_latency_ms);
    std::fprintf(f, "median_latency_ms,%.6f\n", s.median_latency_ms);
    std::fprintf(f, "p95_latency_ms,%.6f\n", s.p95_latency_ms);
    std::fprintf(f, "max_latency_ms,%.6f\n", s.max_latency_ms);
    std::fprintf(f, "max_window_latency_ms,%.6f\n", s.max_window_latency_ms);
    std::fprintf(f, "steady_median_window_latency_ms,%.6f\n",
                 s.steady_median_window_latency_ms);
    std::fprintf(f, "switches,%llu\n", ull(s.switches));
    std::fprintf(f, "handovers,%llu\n", ull(s.handovers));
    std::fprintf(f, "rlfs,%llu\n", ull(s.rlfs));
    std::fprintf(f, "reports,%llu\n", ull(s.reports));
    std::fprintf(f, "outage_episodes,%llu\n", ull(s.outage_episodes));
    std::fprintf(f, "air_bytes,%llu\n", ull(s.air_bytes));
    std::fprintf(f, "x2_bytes,%llu\n", ull(s.x2_bytes));
    std::fprintf(f, "s1_bytes,%llu\n", ull(s.s1_bytes));
    std::fprintf(f, "air_bytes_per_s,%.6f\n", s.air_bytes_per_s);
}

void write_throughput_csv(const std::string& path,
                          const std::vector<WindowStats>& windows,
                          SimTime window_us) {
    CsvFile out(path);
    std::FILE* f = out.get();
    std::fprintf(f, "window_start_us,mbit_per_s\n");
    double secs = us_to_sec(window_us);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        double mbps =
            static_cast<double>(windows[i].bytes) * 8.0 / secs / 1e6;
        std::fprintf(f, "%llu,%.6f\n", ull(i * window_us), mbps);
    }
}

void write_latency_csv(const std::string& path,
                       const std::vector<WindowStats>& windows,
                       SimTime window_us) {
    CsvFile out(path);
    std::FILE* f = out.get();
    std::fprintf(f, "window_start_us,mean_ms,max_ms\n");
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const WindowStats& w = windows[i];
        double max_ms = static_cast<double>(w.latency_max_us) / 1000.0;
        std::fprintf(f, "%llu,%.6f,%.6f\n", ull(i * window_us),
                     w.mean_latency_ms(), max_ms);
    }
}

void write_association_csv(
    const std::string& path,
    const std::vector<std::pair<SimTime, int>>& assoc) {
    CsvFile out(path);
    std::FILE* f = out.get();
    std::fprintf(f, "time_us,cell\n");
    for (const auto& [t, cell] : assoc) {
        std::fprintf(f, "%llu,%d\n", ull(t), cell);
    }
}

void write_rrc_traffic_csv(const std::string& path,
                           const SignalingCounters& sig, double duration_s) {
    CsvFile out(path);
    std::FILE* f = out.get();
    std::fprintf(f, "path,msgs,bytes,bytes_per_s\n");
    for (int p = 0; p < kSigPathCount; ++p) {
        SigPath sp = static_cast<SigPath>(p);
        std::uint64_t bytes = sig.path_bytes(sp);
        double rate = duration_s > 0
                          ? static_cast<double>(bytes) / duration_s
                          : 0.0;
        std::fprintf(f, "%s,%llu,%llu,%.6f\n", sig_path_name(sp),
                     ull(sig.path_msgs(sp)), ull(bytes), rate);
    }
}

void write_channel_csv(const std::string& path,
                       const std::vector<SnrSample>& trace) {
    CsvFile out(path);
    std::FILE* f = out.get();
    std::fprintf(f, "time_us,enb_id,snr_db\n");
    for (const SnrSample& s : trace) {
        std::fprintf(f, "%llu,%d,%.10g\n", ull(s.time), s.enb_id, s.snr_db);
    }
}

void write_events_csv(const std::string& path,
                      const std::vector<ControlEvent>& events) {
    CsvFile out(path);
    std::FILE* f = out.get();
    std::fprintf(f, "time_us,event,cell_a,cell_b\n");
    for (const ControlEvent& e : events) {
        std::fprintf(f, "%llu,%s,%d,%d\n", ull(e.time_us), e.kind, e.cell_a,
                     e.cell_b);
    }
}

}  // namespace dcsim
