#include "lvef/tps_augment.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "lvef/error.hpp"

namespace lvef {

double tps_kernel(double r) { return r > 0.0 ? r * r * std::log(r) : 0.0; }

Point2 TpsWarp::operator()(Point2 p) const {
    Point2 out = affine[0] + p.x * affine[1] + p.y * affine[2];
    for (std::size_t i = 0; i < control_source.size(); ++i) {
        out = out + tps_kernel(distance(p, control_source[i])) * weights[i];
    }
    return out;
}

TpsWarp fit_tps(std::span<const Point2> source, std::span<const Point2> target) {
    if (source.size() != target.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(source.size()) + " sources vs " +
                                                   std::to_string(target.size()) + " targets");
    }
    const std::size_t n = source.size();
    if (n < 3) throw Error(ErrorKind::SingularSystem, "need at least 3 control points");

    const double tol = geometric_tolerance(source);
    if (tol == 0.0) throw Error(ErrorKind::SingularSystem, "control sources coincide");
    std::size_t far = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance(source[i], source[j]) <= tol) {
                throw Error(ErrorKind::SingularSystem,
                            "duplicate control sources " + std::to_string(i) + " and " + std::to_string(j));
            }
        }
        if (distance(source[i], source[0]) > distance(source[far], source[0])) far = i;
    }
    const double base = distance(source[far], source[0]);
    bool collinear = true;
    for (std::size_t k = 0; k < n && collinear; ++k) {
        collinear = std::abs(orient(source[0], source[far], source[k])) / base <= tol;
    }
    if (collinear) throw Error(ErrorKind::SingularSystem, "control sources are collinear");

    // Solved about the centroid; the kernel is translation invariant.
    Point2 c{};
    for (const auto& p : source) c = c + p;
    c = (1.0 / static_cast<double>(n)) * c;

    const auto dim = static_cast<Eigen::Index>(n + 3);
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(dim, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        for (std::size_t j = 0; j < n; ++j) {
            system(ii, static_cast<Eigen::Index>(j)) = tps_kernel(distance(source[i], source[j]));
        }
        const Point2 q = source[i] - c;
        const auto row = static_cast<Eigen::Index>(n);
        system(ii, row) = system(row, ii) = 1.0;
        system(ii, row + 1) = system(row + 1, ii) = q.x;
        system(ii, row + 2) = system(row + 2, ii) = q.y;
        rhs(ii, 0) = target[i].x;
        rhs(ii, 1) = target[i].y;
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const Eigen::MatrixXd sol = lu.solve(rhs);
    if (!sol.allFinite()) throw Error(ErrorKind::SingularSystem, "TPS system could not be solved");

    TpsWarp warp;
    warp.control_source.assign(source.begin(), source.end());
    warp.control_target.assign(target.begin(), target.end());
    warp.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        warp.weights[i] = {sol(ii, 0), sol(ii, 1)};
    }
    const auto row = static_cast<Eigen::Index>(n);
    const Point2 a0{sol(row, 0), sol(row, 1)};
    const Point2 ax{sol(row + 1, 0), sol(row + 1, 1)};
    const Point2 ay{sol(row + 2, 0), sol(row + 2, 1)};
    warp.affine = {a0 - c.x * ax - c.y * ay, ax, ay};
    return warp;
}

std::vector<Point2> apply_tps(const TpsWarp& warp, std::span<const Point2> points) {
    std::vector<Point2> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(warp(p));
    return out;
}

AugmentResult simulate_previous_mask(const BinaryMask& mask, std::uint64_t seed, const AugmentOptions& options) {
    const Contour contour = extract_contour(mask);
    const bool source_simple = is_simple(contour);

    const BinaryMask region = largest_component(mask);
    Point2 centroid{};
    double count = 0.0;
    for (int y = 0; y < region.height(); ++y) {
        for (int x = 0; x < region.width(); ++x) {
            if (!region.at(x, y)) continue;
            centroid = centroid + Point2{static_cast<double>(x), static_cast<double>(y)};
            count += 1.0;
        }
    }
    centroid = (1.0 / count) * centroid;

    double min_x = contour[0].x, max_x = contour[0].x, min_y = contour[0].y, max_y = contour[0].y;
    for (const auto& p : contour.points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double box_w = max_x - min_x + 1.0;
    const double box_h = max_y - min_y + 1.0;

    const std::size_t n = contour.size();
    const std::size_t k = std::min(n, static_cast<std::size_t>(std::max(3, options.control_points)));
    std::vector<Point2> source;
    for (std::size_t i = 0; i < k; ++i) source.push_back(contour[i * n / k]);

    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
        SeededRng rng(attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt)));

        AffineParams affine;
        affine.scale = rng.uniform(1.0 - options.scale_range, 1.0 + options.scale_range);
        affine.translate_x = rng.uniform(-options.translate_frac, options.translate_frac) * mask.width();
        affine.translate_y = rng.uniform(-options.translate_frac, options.translate_frac) * mask.height();

        std::vector<Point2> target = source;
        for (auto& t : target) {
            t.x += rng.uniform(-options.control_shift_frac, options.control_shift_frac) * box_w;
            t.y += rng.uniform(-options.control_shift_frac, options.control_shift_frac) * box_h;
        }

        TpsWarp warp = fit_tps(source, target);
        Contour warped{apply_tps(warp, contour.points)};
        for (auto& p : warped.points) {
            p = centroid + affine.scale * (p - centroid) + Point2{affine.translate_x, affine.translate_y};
        }
        if (source_simple && !is_simple(warped)) continue;

        BinaryMask out = rasterize_polygon(warped, mask.width(), mask.height());
        if (out.empty()) continue;
        return AugmentResult{std::move(out), affine, std::move(warp), attempt + 1};
    }
    throw Error(ErrorKind::DegenerateWarp,
                "warp failed after " + std::to_string(options.max_retries + 1) + " attempts");
}

}  // namespace lvef
