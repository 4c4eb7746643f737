#include "lvef/synth.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include <json.hpp>

#include "lvef/error.hpp"
#include "lvef/random.hpp"

namespace lvef {

namespace {

using nlohmann::json;

struct Placement {
    double cx;
    double base_y;
};

Placement placement(const SynthConfig& c) {
    return {std::floor((c.frame_width - 1) / 2.0), std::round((c.frame_height - 1 + c.base_semi_axis_a) / 2.0)};
}

struct Vertex {
    Point2 p;
    Point2 outward;
};

std::vector<Vertex> semi_ellipse_vertices(double cx, double base_y, double a, double b) {
    // Ramanujan's approximation, halved, for about one vertex per pixel.
    const double h = (a - b) * (a - b) / ((a + b) * (a + b));
    const double half_perimeter =
        0.5 * std::numbers::pi * (a + b) * (1.0 + 3.0 * h / (10.0 + std::sqrt(4.0 - 3.0 * h)));
    const int n_arc = std::max(16, static_cast<int>(std::ceil(half_perimeter)));
    const int n_base = std::max(1, static_cast<int>(std::ceil(2.0 * b)));

    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(n_arc + n_base));
    for (int k = 0; k <= n_arc; ++k) {
        const double theta = std::numbers::pi * k / n_arc;
        const Point2 p{cx + b * std::cos(theta), base_y - a * std::sin(theta)};
        const Point2 n{std::cos(theta) / b, -std::sin(theta) / a};
        out.push_back({p, (1.0 / norm(n)) * n});
    }
    for (int k = 1; k < n_base; ++k) {
        out.push_back({{cx - b + 2.0 * b * k / n_base, base_y}, {0.0, 1.0}});
    }
    return out;
}

template <typename T>
T take(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw Error(ErrorKind::ConfigError, std::string(key) + " must be a number");
        return v.get<double>();
    } else {
        if (!v.is_number_integer()) throw Error(ErrorKind::ConfigError, std::string(key) + " must be an integer");
        return v.get<T>();
    }
}

}  // namespace

void validate(const SynthConfig& c) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigError, what); };
    if (c.frame_width <= 0 || c.frame_height <= 0) fail("frame dimensions must be positive");
    if (!(c.fps > 0.0)) fail("fps must be positive");
    if (c.n_beats < 1) fail("n_beats must be >= 1");
    if (c.frames_per_beat < 10) fail("frames_per_beat must be >= 10");
    if (!(c.base_semi_axis_a > 0.0) || !(c.base_semi_axis_b > 0.0)) fail("semi-axes must be positive");
    if (!(c.target_ef > 0.0 && c.target_ef < 1.0)) fail("target_ef must lie in (0, 1)");
    if (!(c.noise_px >= 0.0)) fail("noise_px must be >= 0");

    const auto [cx, base_y] = placement(c);
    const double margin = c.noise_px;
    if (cx - c.base_semi_axis_b - margin < 0.0 || cx + c.base_semi_axis_b + margin > c.frame_width - 1) {
        fail("semi-ellipse of half-width " + std::to_string(c.base_semi_axis_b) + " does not fit a frame " +
             std::to_string(c.frame_width) + " px wide");
    }
    if (base_y + margin > c.frame_height - 1 || base_y - c.base_semi_axis_a - margin < 0.0) {
        fail("semi-ellipse of height " + std::to_string(c.base_semi_axis_a) + " does not fit a frame " +
             std::to_string(c.frame_height) + " px high");
    }
}

double synth_scale(const SynthConfig& c, int frame) {
    const double phase = 2.0 * std::numbers::pi * frame / c.frames_per_beat;
    const double ratio = 1.0 - c.target_ef * (1.0 - std::cos(phase)) / 2.0;
    return std::cbrt(ratio);
}

double semi_ellipse_volume(double a, double b) { return 2.0 * std::numbers::pi / 3.0 * a * b * b; }

Contour semi_ellipse_polygon(double cx, double base_y, double a, double b) {
    Contour out;
    for (const auto& v : semi_ellipse_vertices(cx, base_y, a, b)) out.points.push_back(v.p);
    return out;
}

SynthVideo generate_video(const SynthConfig& config) {
    validate(config);
    const auto [cx, base_y] = placement(config);
    const int n_frames = config.n_beats * config.frames_per_beat;

    SynthVideo video;
    video.truth_ef = config.target_ef;
    video.fps = config.fps;
    video.masks.reserve(static_cast<std::size_t>(n_frames));
    for (int f = 0; f < n_frames; ++f) {
        const double s = synth_scale(config, f);
        const double a = s * config.base_semi_axis_a;
        const double b = s * config.base_semi_axis_b;
        std::vector<Vertex> verts = semi_ellipse_vertices(cx, base_y, a, b);
        Contour poly;
        poly.points.reserve(verts.size());
        if (config.noise_px > 0.0) {
            SeededRng rng(derive_seed(config.seed, static_cast<std::uint64_t>(f)));
            for (const auto& v : verts) {
                poly.points.push_back(v.p + rng.uniform(-config.noise_px, config.noise_px) * v.outward);
            }
        } else {
            for (const auto& v : verts) poly.points.push_back(v.p);
        }
        video.masks.push_back(rasterize_polygon(poly, config.frame_width, config.frame_height));
        video.truth_volumes.push_back(semi_ellipse_volume(a, b));
        if (f % config.frames_per_beat == 0) video.ed_frames.push_back(f);
        if (f % config.frames_per_beat == config.frames_per_beat / 2) video.es_frames.push_back(f);
    }
    return video;
}

SynthConfig parse_synth_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ConfigError, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");

    static const std::set<std::string> known = {"frame_width",      "frame_height",     "fps",
                                                "n_beats",          "frames_per_beat",  "base_semi_axis_a",
                                                "base_semi_axis_b", "target_ef",        "noise_px",
                                                "seed"};
    for (const auto& item : j.items()) {
        if (!known.contains(item.key())) throw Error(ErrorKind::ConfigError, "unknown key '" + item.key() + "'");
    }

    SynthConfig c;
    c.frame_width = take(j, "frame_width", c.frame_width);
    c.frame_height = take(j, "frame_height", c.frame_height);
    c.fps = take(j, "fps", c.fps);
    c.n_beats = take(j, "n_beats", c.n_beats);
    c.frames_per_beat = take(j, "frames_per_beat", c.frames_per_beat);
    c.base_semi_axis_a = take(j, "base_semi_axis_a", c.base_semi_axis_a);
    c.base_semi_axis_b = take(j, "base_semi_axis_b", c.base_semi_axis_b);
    c.target_ef = take(j, "target_ef", c.target_ef);
    c.noise_px = take(j, "noise_px", c.noise_px);
    c.seed = take(j, "seed", c.seed);
    validate(c);
    return c;
}

std::string synth_config_to_json(const SynthConfig& c) {
    const json j = {{"frame_width", c.frame_width},
                    {"frame_height", c.frame_height},
                    {"fps", c.fps},
                    {"n_beats", c.n_beats},
                    {"frames_per_beat", c.frames_per_beat},
                    {"base_semi_axis_a", c.base_semi_axis_a},
                    {"base_semi_axis_b", c.base_semi_axis_b},
                    {"target_ef", c.target_ef},
                    {"noise_px", c.noise_px},
                    {"seed", c.seed}};
    return j.dump(2);
}

std::string synth_truth_json(const SynthVideo& video, const SynthConfig& config) {
    json j;
    j["truth_ef"] = video.truth_ef;
    j["fps"] = video.fps;
    j["volumes"] = video.truth_volumes;
    j["ed_frames"] = video.ed_frames;
    j["es_frames"] = video.es_frames;
    j["config"] = json::parse(synth_config_to_json(config));
    return j.dump(2) + "\n";
}

}  // namespace lvef
