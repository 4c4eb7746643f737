#include "lvef/mask_stack.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "lvef/error.hpp"

namespace lvef {

namespace {

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) | (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::string at_offset(std::size_t off) { return " (byte offset " + std::to_string(off) + ")"; }

}  // namespace

MaskStack parse_mask_stack(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), "LVM1", 4) != 0) {
        throw Error(ErrorKind::BadMagic, "expected \"LVM1\"" + at_offset(0));
    }
    if (bytes.size() < kMaskStackHeaderSize) {
        throw Error(ErrorKind::CorruptHeader, "header needs " + std::to_string(kMaskStackHeaderSize) +
                                                  " bytes, file has " + std::to_string(bytes.size()) +
                                                  at_offset(bytes.size()));
    }
    const std::uint16_t version = static_cast<std::uint16_t>(bytes[4] | (bytes[5] << 8));
    if (version != kMaskStackVersion) {
        throw Error(ErrorKind::CorruptHeader, "unsupported version " + std::to_string(version) + at_offset(4));
    }
    const std::uint32_t width = read_u32(bytes, 6);
    const std::uint32_t height = read_u32(bytes, 10);
    const std::uint32_t n_frames = read_u32(bytes, 14);
    const float fps = std::bit_cast<float>(read_u32(bytes, 18));
    if (width == 0 || width > 1u << 16) {
        throw Error(ErrorKind::CorruptHeader, "width " + std::to_string(width) + " out of range" + at_offset(6));
    }
    if (height == 0 || height > 1u << 16) {
        throw Error(ErrorKind::CorruptHeader, "height " + std::to_string(height) + " out of range" + at_offset(10));
    }
    if (!std::isfinite(fps) || fps < 0.0f) {
        throw Error(ErrorKind::CorruptHeader, "fps is not a finite non-negative number" + at_offset(18));
    }

    const std::uint64_t frame_size = static_cast<std::uint64_t>(width) * height;
    const std::uint64_t expected = frame_size * n_frames;
    const std::uint64_t actual = bytes.size() - kMaskStackHeaderSize;
    if (actual < expected) {
        throw Error(ErrorKind::TruncatedPayload, "expected " + std::to_string(expected) + " payload bytes, found " +
                                                     std::to_string(actual) + at_offset(bytes.size()));
    }
    if (actual > expected) {
        throw Error(ErrorKind::CorruptHeader, std::to_string(actual - expected) + " trailing bytes after payload" +
                                                  at_offset(kMaskStackHeaderSize + expected));
    }
    for (std::size_t i = kMaskStackHeaderSize; i < bytes.size(); ++i) {
        if (bytes[i] > 1) {
            throw Error(ErrorKind::InvalidPixelValue,
                        "pixel byte " + std::to_string(bytes[i]) + " is not 0 or 1" + at_offset(i));
        }
    }

    MaskStack stack;
    stack.width = static_cast<int>(width);
    stack.height = static_cast<int>(height);
    stack.fps = fps;
    stack.frames.reserve(n_frames);
    auto it = bytes.begin() + static_cast<std::ptrdiff_t>(kMaskStackHeaderSize);
    for (std::uint32_t f = 0; f < n_frames; ++f) {
        std::vector<std::uint8_t> px(it, it + static_cast<std::ptrdiff_t>(frame_size));
        it += static_cast<std::ptrdiff_t>(frame_size);
        stack.frames.emplace_back(stack.width, stack.height, std::move(px));
    }
    return stack;
}

std::vector<std::uint8_t> serialize_mask_stack(const MaskStack& stack) {
    if (stack.width <= 0 || stack.height <= 0) {
        throw Error(ErrorKind::DimensionMismatch, "stack dimensions must be positive");
    }
    std::vector<std::uint8_t> out = {'L', 'V', 'M', '1'};
    out.push_back(static_cast<std::uint8_t>(kMaskStackVersion & 0xff));
    out.push_back(static_cast<std::uint8_t>(kMaskStackVersion >> 8));
    put_u32(out, static_cast<std::uint32_t>(stack.width));
    put_u32(out, static_cast<std::uint32_t>(stack.height));
    put_u32(out, static_cast<std::uint32_t>(stack.frames.size()));
    put_u32(out, std::bit_cast<std::uint32_t>(stack.fps));
    for (const auto& frame : stack.frames) {
        if (frame.width() != stack.width || frame.height() != stack.height) {
            throw Error(ErrorKind::DimensionMismatch, "frame size differs from stack size");
        }
        const auto px = frame.pixels();
        out.insert(out.end(), px.begin(), px.end());
    }
    return out;
}

MaskStack read_mask_stack(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_mask_stack(bytes);
}

void write_mask_stack(const std::filesystem::path& path, const MaskStack& stack) {
    const auto bytes = serialize_mask_stack(stack);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::IoError, "short write to " + path.string());
}

}  // namespace lvef
