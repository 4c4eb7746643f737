#pragma once

// LVM1 mask-stack files.
//
//   offset  size  field
//   0       4     magic "LVM1"
//   4       2     version, u16 little-endian (= 1)
//   6       4     width, u32 little-endian
//   10      4     height, u32 little-endian
//   14      4     n_frames, u32 little-endian
//   18      4     fps, IEEE-754 binary32 little-endian
//   22      ...   n_frames * height * width bytes, each 0 or 1,
//                 frame-major then row-major

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lvef/geometry.hpp"

namespace lvef {

inline constexpr std::uint16_t kMaskStackVersion = 1;
inline constexpr std::size_t kMaskStackHeaderSize = 22;

struct MaskStack {
    int width = 0;
    int height = 0;
    float fps = 0.0f;
    std::vector<BinaryMask> frames;
};

/// Throws BadMagic, CorruptHeader, TruncatedPayload or InvalidPixelValue;
/// messages carry the offending byte offset.
MaskStack parse_mask_stack(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_mask_stack(const MaskStack& stack);

/// File wrappers; IoError when the file cannot be opened or written.
MaskStack read_mask_stack(const std::filesystem::path& path);
void write_mask_stack(const std::filesystem::path& path, const MaskStack& stack);

}  // namespace lvef
