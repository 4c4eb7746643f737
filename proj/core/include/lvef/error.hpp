#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lvef {

enum class ErrorKind {
    // geometry
    EmptyMask,
    DegenerateRegion,
    DegenerateInput,
    // landmarks
    AmbiguousLandmarks,
    NoMidlineIntersection,
    // beat analysis
    InvalidWindow,
    NoCycles,
    // tps / augmentation
    SingularSystem,
    DegenerateWarp,
    // metrics
    DimensionMismatch,
    LengthMismatch,
    EmptyInput,
    OutOfRange,
    // synthetic videos
    ConfigError,
    // file formats
    BadMagic,
    CorruptHeader,
    TruncatedPayload,
    InvalidPixelValue,
    MalformedGroup,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace lvef
