#pragma once

// Expert LV tracings given as paired-coordinate segments.
//
// Each (video_id, frame) group lists segments (x1, y1) -> (x2, y2) across
// the ventricle: the first is basal and the rest step toward the apex. The
// closed outline walks the x1/y1 ends in order, then the x2/y2 ends in
// reverse.

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvef/geometry.hpp"

namespace lvef {

struct TracingSegment {
    std::string video_id;
    int frame = 0;
    Point2 p1;
    Point2 p2;
};

struct TracingTable {
    std::vector<TracingSegment> rows;
};

struct TracingKey {
    std::string video_id;
    int frame = 0;

    friend auto operator<=>(const TracingKey&, const TracingKey&) = default;
};

/// Header columns (case-insensitive): video_id or filename, frame,
/// x1, y1, x2, y2. Throws MalformedGroup naming the bad line.
TracingTable parse_tracings_csv(std::string_view text);

/// Throws MalformedGroup for fewer than 3 segments or when segment
/// midpoints do not advance monotonically from the first to the last.
Contour tracing_polygon(std::span<const TracingSegment> group);

/// Rows are grouped by (video_id, frame) preserving file order.
std::map<TracingKey, BinaryMask> tracings_to_masks(const TracingTable& table, int width, int height);

}  // namespace lvef
