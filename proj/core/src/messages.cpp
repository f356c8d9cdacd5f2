#include "dcsim/messages.hpp"

namespace dcsim {

const char* msg_type_name(MsgType t) {
    switch (t) {
        case MsgType::MeasReport: return "MEAS_REPORT";
        case MsgType::SwitchCmd: return "SWITCH_CMD";
        case MsgType::SwitchAck: return "SWITCH_ACK";
        case MsgType::HoRequest: return "HO_REQUEST";
        case MsgType::HoAck: return "HO_ACK";
        case MsgType::RrcReconf: return "RRC_RECONF";
        case MsgType::RachMsg: return "RACH_MSG";
        case MsgType::PathSwitchReq: return "PATH_SWITCH_REQ";
        case MsgType::PathSwitchAck: return "PATH_SWITCH_ACK";
    }
    return "?";
}

const char* sig_path_name(SigPath p) {
    switch (p) {
        case SigPath::AirLte: return "AIR_LTE";
        case SigPath::AirMmwave: return "AIR_MMWAVE";
        case SigPath::X2: return "X2";
        case SigPath::S1Mme: return "S1_MME";
    }
    return "?";
}

}  // namespace dcsim
