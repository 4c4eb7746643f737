#include "lvef/tracings.hpp"

#include <limits>

#include "csv_util.hpp"
#include "lvef/error.hpp"

namespace lvef {

TracingTable parse_tracings_csv(std::string_view text) {
    const auto rows = csv::split_rows(text);
    if (rows.empty()) throw Error(ErrorKind::MalformedGroup, "tracing table is empty");

    const csv::Row& header = rows.front();
    const auto c_id = csv::column(header, {"video_id", "filename"});
    const auto c_frame = csv::column(header, {"frame"});
    const auto c_x1 = csv::column(header, {"x1"});
    const auto c_y1 = csv::column(header, {"y1"});
    const auto c_x2 = csv::column(header, {"x2"});
    const auto c_y2 = csv::column(header, {"y2"});
    if (!c_id || !c_frame || !c_x1 || !c_y1 || !c_x2 || !c_y2) {
        throw Error(ErrorKind::MalformedGroup, "header must name video_id, frame, x1, y1, x2, y2");
    }

    TracingTable table;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto field = [&](std::size_t col) -> const std::string& {
            if (col >= row.fields.size()) {
                throw Error(ErrorKind::MalformedGroup, "line " + std::to_string(row.line) + " has too few columns");
            }
            return row.fields[col];
        };
        auto number = [&](std::size_t col) {
            const auto v = csv::to_double(field(col));
            if (!v) {
                throw Error(ErrorKind::MalformedGroup,
                            "line " + std::to_string(row.line) + ": '" + field(col) + "' is not a number");
            }
            return *v;
        };
        const auto frame = csv::to_int(field(*c_frame));
        if (!frame) {
            throw Error(ErrorKind::MalformedGroup, "line " + std::to_string(row.line) + ": bad frame index");
        }
        table.rows.push_back({field(*c_id), static_cast<int>(*frame), {number(*c_x1), number(*c_y1)},
                              {number(*c_x2), number(*c_y2)}});
    }
    return table;
}

Contour tracing_polygon(std::span<const TracingSegment> group) {
    const std::string where =
        group.empty() ? std::string("empty group")
                      : group.front().video_id + " frame " + std::to_string(group.front().frame);
    if (group.size() < 3) {
        throw Error(ErrorKind::MalformedGroup,
                    where + " has " + std::to_string(group.size()) + " segments, need at least 3");
    }
    const Point2 first = midpoint(group.front().p1, group.front().p2);
    const Point2 axis = midpoint(group.back().p1, group.back().p2) - first;
    if (norm(axis) == 0.0) throw Error(ErrorKind::MalformedGroup, where + ": first and last segments share a midpoint");
    double prev = std::numeric_limits<double>::lowest();
    for (const auto& seg : group) {
        const double along = dot(midpoint(seg.p1, seg.p2) - first, axis);
        if (along <= prev) {
            throw Error(ErrorKind::MalformedGroup, where + ": segments are not ordered from base to apex");
        }
        prev = along;
    }

    Contour poly;
    for (const auto& seg : group) poly.points.push_back(seg.p1);
    for (auto it = group.rbegin(); it != group.rend(); ++it) poly.points.push_back(it->p2);
    return poly;
}

std::map<TracingKey, BinaryMask> tracings_to_masks(const TracingTable& table, int width, int height) {
    std::map<TracingKey, std::vector<TracingSegment>> groups;
    for (const auto& row : table.rows) groups[{row.video_id, row.frame}].push_back(row);

    std::map<TracingKey, BinaryMask> out;
    for (const auto& [key, segs] : groups) {
        out.emplace(key, rasterize_polygon(tracing_polygon(segs), width, height));
    }
    return out;
}

}  // namespace lvef
