#pragma once

// Thin-plate-spline warps and the simulated-previous-frame mask generator.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lvef/geometry.hpp"
#include "lvef/random.hpp"

namespace lvef {

/// U(r) = r^2 log r with U(0) = 0.
double tps_kernel(double r);

struct TpsWarp {
    std::vector<Point2> control_source;
    std::vector<Point2> control_target;
    std::vector<Point2> weights;       // one 2-vector per control point
    std::array<Point2, 3> affine{};    // constant, x and y coefficients

    Point2 operator()(Point2 p) const;
};

/// Exact interpolating TPS through the control pairs (no regularization).
/// Throws SingularSystem for fewer than 3, duplicated or collinear sources,
/// and LengthMismatch when the lists differ in length.
TpsWarp fit_tps(std::span<const Point2> source, std::span<const Point2> target);

std::vector<Point2> apply_tps(const TpsWarp& warp, std::span<const Point2> points);

struct AffineParams {
    double scale = 1.0;  // about the mask centroid
    double translate_x = 0.0;
    double translate_y = 0.0;
};

struct AugmentOptions {
    double scale_range = 0.10;        // scale drawn from [1 - r, 1 + r]
    double translate_frac = 0.10;     // of frame width / height
    double control_shift_frac = 0.10; // of mask bounding-box width / height
    int control_points = 5;
    int max_retries = 3;
};

struct AugmentResult {
    BinaryMask mask;
    AffineParams affine;
    TpsWarp warp;
    int attempts = 1;
};

/// Contour -> TPS on evenly spaced control points with random shifts ->
/// affine scale/translate -> rasterize at the input frame size. A pure
/// function of (mask, seed). A warped contour that self-intersects (when the
/// source contour was simple) or rasterizes to nothing is redrawn with a
/// derived seed; after max_retries redraws it throws DegenerateWarp.
AugmentResult simulate_previous_mask(const BinaryMask& mask, std::uint64_t seed, const AugmentOptions& options = {});

}  // namespace lvef
