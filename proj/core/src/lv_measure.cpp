#include "lvef/lv_measure.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <string>

#include "lvef/error.hpp"

namespace lvef {

namespace {

LvLandmarks build_landmarks(const Contour& contour, const std::array<NearestPoint, 3>& nearest, int apex, int base_a,
                            int base_b, double tol) {
    LvLandmarks lm;
    lm.annulus_a = nearest[base_a].point;
    lm.annulus_b = nearest[base_b].point;
    lm.apex = nearest[apex].point;
    lm.base_midpoint = midpoint(lm.annulus_a, lm.annulus_b);

    const Point2 axis = lm.base_midpoint - lm.apex;
    if (norm(axis) <= tol) {
        throw Error(ErrorKind::NoMidlineIntersection, "apex coincides with the annulus midpoint");
    }
    const auto hits = intersect_ray_polygon(lm.apex, axis, contour);
    if (hits.empty() || distance(hits.back(), lm.apex) <= tol) {
        throw Error(ErrorKind::NoMidlineIntersection, "midline does not cross the contour away from the apex");
    }
    lm.midline_foot = hits.back();
    return lm;
}

}  // namespace

LvLandmarks locate_landmarks(const Contour& contour, const Triangle& triangle, const LandmarkOptions& options) {
    if (contour.size() < 3) {
        throw Error(ErrorKind::DegenerateInput, "contour needs at least 3 points");
    }
    const double tol = geometric_tolerance(contour.points);
    if (triangle.area() <= tol * tol) {
        throw Error(ErrorKind::DegenerateInput, "enclosing triangle is degenerate");
    }

    std::array<NearestPoint, 3> nearest;
    for (int i = 0; i < 3; ++i) nearest[i] = nearest_point_on_contour(triangle.vertex(i), contour);

    std::array<int, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int l, int r) { return nearest[l].distance < nearest[r].distance; });

    LvLandmarks primary = build_landmarks(contour, nearest, order[2], order[0], order[1], tol);
    primary.selection_margin = nearest[order[2]].distance - nearest[order[1]].distance;

    const double margin_tol = options.ambiguity_margin >= 0.0 ? options.ambiguity_margin : tol;
    if (primary.selection_margin <= margin_tol) {
        const double length = lv_length(primary);
        try {
            const LvLandmarks swapped = build_landmarks(contour, nearest, order[1], order[0], order[2], tol);
            const double change = std::abs(lv_length(swapped) - length) / length;
            if (change > options.ambiguity_length_change) {
                throw Error(ErrorKind::AmbiguousLandmarks,
                            "apex selection margin " + std::to_string(primary.selection_margin) +
                                " px; swapping apex changes length by " + std::to_string(100.0 * change) + "%");
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoMidlineIntersection) throw;
        }
    }
    return primary;
}

double lv_length(const LvLandmarks& landmarks) { return distance(landmarks.apex, landmarks.midline_foot); }

double area_length_volume(double area, double length) {
    return 8.0 * area * area / (3.0 * std::numbers::pi * length);
}

VolumeSample volume_from_mask(const BinaryMask& mask, int frame_index, const LandmarkOptions& options) {
    const Contour contour = extract_contour(mask);
    const Contour hull = convex_hull(contour.points);

    VolumeSample sample;
    sample.frame_index = frame_index;
    sample.triangle = min_enclosing_triangle(hull);
    sample.landmarks = locate_landmarks(contour, sample.triangle, options);
    sample.length = lv_length(sample.landmarks);
    sample.area = mask_area(mask);
    sample.volume = area_length_volume(sample.area, sample.length);
    return sample;
}

}  // namespace lvef
