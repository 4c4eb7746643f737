#pragma once

// Synthetic beating-LV mask videos with analytically known volumes.
//
// Each frame is a semi-ellipse with its flat side (the mitral plane) fixed
// at the bottom and the rounded apex pointing up. Both semi-axes are scaled
// by the same factor s(t). For the continuous shape A = pi a b / 2 and
// L = a, so the area-length volume is (2 pi / 3) a b^2 and scales as s^3.
// The volume follows a raised cosine starting at end-diastole:
//     V(t) / V_ed = 1 - EF (1 - cos(2 pi t / T)) / 2
// hence s(t) = (V(t) / V_ed)^(1/3) and the systolic scale is (1 - EF)^(1/3).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lvef/geometry.hpp"

namespace lvef {

struct SynthConfig {
    int frame_width = 64;
    int frame_height = 64;
    double fps = 50.0;
    int n_beats = 5;
    int frames_per_beat = 40;
    double base_semi_axis_a = 40.0;  // apex direction, at end-diastole
    double base_semi_axis_b = 18.0;  // basal half-width, at end-diastole
    double target_ef = 0.60;
    double noise_px = 0.0;
    std::uint64_t seed = 0;
};

/// Throws ConfigError listing the first violated constraint.
void validate(const SynthConfig& config);

struct SynthVideo {
    std::vector<BinaryMask> masks;
    std::vector<double> truth_volumes;  // analytic (2 pi / 3) a b^2 per frame
    double truth_ef = 0.0;
    double fps = 0.0;
    std::vector<int> ed_frames;  // volume maxima
    std::vector<int> es_frames;  // volume minima
};

/// Axis scale factor at frame index t.
double synth_scale(const SynthConfig& config, int frame);

/// Analytic area-length volume of the continuous semi-ellipse.
double semi_ellipse_volume(double a, double b);

/// Closed semi-ellipse polygon: flat base at y = base_y from cx - b to
/// cx + b, apex at (cx, base_y - a). Vertices roughly one pixel apart.
Contour semi_ellipse_polygon(double cx, double base_y, double a, double b);

SynthVideo generate_video(const SynthConfig& config);

/// Strict JSON parsing; unknown keys and bad types raise ConfigError.
SynthConfig parse_synth_config(std::string_view json_text);
std::string synth_config_to_json(const SynthConfig& config);

/// {"truth_ef", "fps", "volumes", "ed_frames", "es_frames", "config"}.
std::string synth_truth_json(const SynthVideo& video, const SynthConfig& config);

}  // namespace lvef
