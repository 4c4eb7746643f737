#include "lvef/error.hpp"

namespace lvef {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EmptyMask: return "EmptyMask";
        case ErrorKind::DegenerateRegion: return "DegenerateRegion";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::AmbiguousLandmarks: return "AmbiguousLandmarks";
        case ErrorKind::NoMidlineIntersection: return "NoMidlineIntersection";
        case ErrorKind::InvalidWindow: return "InvalidWindow";
        case ErrorKind::NoCycles: return "NoCycles";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::DegenerateWarp: return "DegenerateWarp";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::BadMagic: return "BadMagic";
        case ErrorKind::CorruptHeader: return "CorruptHeader";
        case ErrorKind::TruncatedPayload: return "TruncatedPayload";
        case ErrorKind::InvalidPixelValue: return "InvalidPixelValue";
        case ErrorKind::MalformedGroup: return "MalformedGroup";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace lvef
