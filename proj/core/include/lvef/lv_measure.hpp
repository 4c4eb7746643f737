#pragma once

// Landmark localization, long-axis length and area-length volume.

#include "lvef/geometry.hpp"

namespace lvef {

struct LvLandmarks {
    Point2 annulus_a;
    Point2 annulus_b;
    Point2 apex;
    Point2 base_midpoint;
    Point2 midline_foot;  // basal crossing of the apex -> base_midpoint ray with the contour
    /// Gap between the 2nd and 3rd smallest vertex-to-contour distances.
    double selection_margin = 0.0;
};

struct LandmarkOptions {
    /// Margins at or below this are "ambiguous" (pixels). Negative selects the
    /// default, 1e-6 x contour bounding-box diagonal.
    double ambiguity_margin = -1.0;
    /// An ambiguous pick is only an error if swapping apex and annulus
    /// changes the length by more than this fraction.
    double ambiguity_length_change = 0.05;
};

/// The two triangle vertices closest to the contour give the mitral annulus
/// points (their nearest contour points); the third gives the apex. Ties
/// fall back to triangle vertex order a, b, c.
/// Throws AmbiguousLandmarks or NoMidlineIntersection.
LvLandmarks locate_landmarks(const Contour& contour, const Triangle& triangle, const LandmarkOptions& options = {});

/// Distance from the apex to the midline foot, in pixels.
double lv_length(const LvLandmarks& landmarks);

/// 8 A^2 / (3 pi L).
double area_length_volume(double area, double length);

struct VolumeSample {
    int frame_index = 0;
    double area = 0.0;    // pixels^2
    double length = 0.0;  // pixels
    double volume = 0.0;  // pixels^3
    LvLandmarks landmarks;
    Triangle triangle;
};

/// Contour -> hull -> minimum triangle -> landmarks -> length -> volume.
/// Propagates EmptyMask, DegenerateRegion, DegenerateInput,
/// AmbiguousLandmarks and NoMidlineIntersection.
VolumeSample volume_from_mask(const BinaryMask& mask, int frame_index = 0, const LandmarkOptions& options = {});

}  // namespace lvef
