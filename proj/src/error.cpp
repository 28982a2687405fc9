#include "rampkit/error.hpp"

namespace rampkit {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::NonUniformStep: return "NonUniformStep";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::EmptySelection: return "EmptySelection";
    case ErrorKind::ZeroBaseline: return "ZeroBaseline";
    case ErrorKind::AllModesRejected: return "AllModesRejected";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::HistoricalTooShort: return "HistoricalTooShort";
    case ErrorKind::InvalidS: return "InvalidS";
    case ErrorKind::AlignmentError: return "AlignmentError";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

} // namespace rampkit
