#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace dcsim {

enum class MsgType {
    MeasReport,
    SwitchCmd,
    SwitchAck,
    HoRequest,
    HoAck,
    RrcReconf,
    RachMsg,
    PathSwitchReq,
    PathSwitchAck,
};
inline constexpr int kMsgTypeCount = 9;

enum class SigPath { AirLte, AirMmwave, X2, S1Mme };
inline constexpr int kSigPathCount = 4;

constexpr std::size_t message_bytes(MsgType t) {
    switch (t) {
        case MsgType::MeasReport: return 32;
        case MsgType::SwitchCmd: return 16;
        case MsgType::SwitchAck: return 16;
        case MsgType::HoRequest: return 64;
        case MsgType::HoAck: return 64;
        case MsgType::RrcReconf: return 128;
        case MsgType::RachMsg: return 20;
        case MsgType::PathSwitchReq: return 64;
        case MsgType::PathSwitchAck: return 64;
    }
    return 0;
}

const char* msg_type_name(MsgType t);
const char* sig_path_name(SigPath p);

// Per-(message, path) tallies. Retransmitted attempts each count: the
// metric is bytes put on the wire, not messages that got through.
struct SignalingCounters {
    std::array<std::array<std::uint64_t, kSigPathCount>, kMsgTypeCount> msgs{};
    std::array<std::array<std::uint64_t, kSigPathCount>, kMsgTypeCount> bytes{};

    void record(MsgType t, SigPath p, std::uint64_t count = 1) {
        msgs[static_cast<int>(t)][static_cast<int>(p)] += count;
        bytes[static_cast<int>(t)][static_cast<int>(p)] +=
            count * message_bytes(t);
    }

    std::uint64_t path_bytes(SigPath p) const {
        std::uint64_t sum = 0;
        for (const auto& row : bytes) sum += row[static_cast<int>(p)];
        return sum;
    }
    std::uint64_t path_msgs(SigPath p) const {
        std::uint64_t sum = 0;
        for (const auto& row : msgs) sum += row[static_cast<int>(p)];
        return sum;
    }
    std::uint64_t air_bytes() const {
        return path_bytes(SigPath::AirLte) + path_bytes(SigPath::AirMmwave);
    }
    std::uint64_t type_msgs(MsgType t) const {
        std::uint64_t sum = 0;
        for (std::uint64_t v : msgs[static_cast<int>(t)]) sum += v;
        return sum;
    }
    std::uint64_t type_bytes(MsgType t) const {
        std::uint64_t sum = 0;
        for (std::uint64_t v : bytes[static_cast<int>(t)]) sum += v;
        return sum;
    }
};

}  // namespace dcsim
