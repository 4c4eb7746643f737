#include "lvef/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <thread>

#include <json.hpp>

#include "csv_util.hpp"

namespace lvef {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void measure_frames(std::span<const BinaryMask> masks, const LandmarkOptions& options, int workers,
                    std::vector<FrameDiagnostic>& frames) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < masks.size(); i = next++) {
            FrameDiagnostic& d = frames[i];
            d.frame = static_cast<int>(i);
            try {
                d.sample = volume_from_mask(masks[i], d.frame, options);
            } catch (const Error& e) {
                d.error_kind = e.kind();
                d.error = e.what();
            }
        }
    };
    const int n_threads = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(masks.size(), 1)));
    if (n_threads == 1) {
        work();
        return;
    }
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
}

// Linear between valid neighbours, constant beyond the first/last valid frame.
void interpolate_failed(std::vector<FrameDiagnostic>& frames) {
    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].sample) valid.push_back(i);
    }
    if (valid.empty()) {
        for (auto& f : frames) f.volume = kNaN;
        return;
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].sample) {
            frames[i].volume = frames[i].sample->volume;
            continue;
        }
        while (k + 1 < valid.size() && valid[k + 1] < i) ++k;
        const std::size_t lo = valid[k];
        if (i < lo) {
            frames[i].volume = frames[lo].sample->volume;
        } else if (k + 1 == valid.size()) {
            frames[i].volume = frames[lo].sample->volume;
        } else {
            const std::size_t hi = valid[k + 1];
            const double t = static_cast<double>(i - lo) / static_cast<double>(hi - lo);
            frames[i].volume = (1.0 - t) * frames[lo].sample->volume + t * frames[hi].sample->volume;
        }
    }
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string_view to_string(EstimateStatus s) noexcept {
    switch (s) {
        case EstimateStatus::Ok: return "ok";
        case EstimateStatus::NoCycles: return "no_cycles";
        case EstimateStatus::NoValidFrames: return "no_valid_frames";
    }
    return "unknown";
}

EstimateReport run_estimate(std::span<const BinaryMask> masks, std::optional<double> fps,
                            const EstimateParams& params, std::string video_id) {
    if (masks.empty()) throw Error(ErrorKind::EmptyInput, "video has no frames");

    EstimateReport report;
    report.video_id = std::move(video_id);
    report.fps = fps;
    report.min_prominence_frac = params.beat.min_prominence_frac;
    report.min_separation = params.beat.min_separation.value_or(default_min_separation(fps));
    report.frames.resize(masks.size());

    measure_frames(masks, params.landmarks, params.workers, report.frames);
    std::size_t n_failed = 0;
    for (const auto& f : report.frames) {
        if (!f.sample) {
            ++n_failed;
            report.warnings.push_back("frame " + std::to_string(f.frame) + ": " + f.error);
        }
    }
    interpolate_failed(report.frames);
    if (n_failed == masks.size()) {
        report.status = EstimateStatus::NoValidFrames;
        report.warnings.push_back("no frame produced a volume");
        for (auto& f : report.frames) f.filtered_volume = kNaN;
        return report;
    }
    if (n_failed > 0) {
        report.warnings.push_back(std::to_string(n_failed) + " of " + std::to_string(masks.size()) +
                                  " frames interpolated");
    }

    VolumeSignal raw{{}, fps};
    for (const auto& f : report.frames) raw.volumes.push_back(f.volume);

    const int n = static_cast<int>(raw.volumes.size());
    report.median_window = params.beat.median_window;
    if (report.median_window > 2 * n - 1) {
        report.median_window = 2 * n - 1;
        report.warnings.push_back("median window shrunk to " + std::to_string(report.median_window) + " for " +
                                  std::to_string(n) + " frames");
    }
    const VolumeSignal filtered = median_filter(raw, report.median_window);
    for (std::size_t i = 0; i < report.frames.size(); ++i) report.frames[i].filtered_volume = filtered.volumes[i];

    const auto [lo, hi] = std::minmax_element(filtered.volumes.begin(), filtered.volumes.end());
    report.min_prominence = params.beat.min_prominence_frac * (*hi - *lo);
    report.extrema = find_extrema(filtered, report.min_separation, report.min_prominence);

    try {
        report.estimate = estimate_ef(segment_cycles(filtered, report.extrema.peaks, report.extrema.troughs));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoCycles) throw;
        report.status = EstimateStatus::NoCycles;
        report.warnings.push_back(e.what());
    }
    return report;
}

std::string report_to_json(const EstimateReport& r) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["video_id"] = r.video_id;
    j["fps"] = r.fps ? json(*r.fps) : json(nullptr);
    j["params"] = {{"median_window", r.median_window},
                   {"min_prominence_frac", r.min_prominence_frac},
                   {"min_prominence", r.min_prominence},
                   {"min_separation", r.min_separation}};

    json frames = json::array();
    for (const auto& f : r.frames) {
        json fj;
        fj["frame"] = f.frame;
        fj["valid"] = f.sample.has_value();
        if (f.sample) {
            const auto& s = *f.sample;
            fj["area"] = s.area;
            fj["length"] = s.length;
            fj["volume_raw"] = s.volume;
            fj["apex"] = point_json(s.landmarks.apex);
            fj["annulus"] = json::array({point_json(s.landmarks.annulus_a), point_json(s.landmarks.annulus_b)});
            fj["midline_foot"] = point_json(s.landmarks.midline_foot);
            fj["selection_margin"] = s.landmarks.selection_margin;
            fj["triangle"] = json::array({point_json(s.triangle.a), point_json(s.triangle.b), point_json(s.triangle.c)});
        } else {
            fj["volume_raw"] = nullptr;
            fj["error_kind"] = f.error_kind ? std::string(to_string(*f.error_kind)) : std::string();
            fj["error"] = f.error;
        }
        fj["volume"] = f.volume;
        fj["volume_filtered"] = f.filtered_volume;
        frames.push_back(std::move(fj));
    }
    j["frames"] = std::move(frames);
    j["peaks"] = r.extrema.peaks;
    j["troughs"] = r.extrema.troughs;

    json cycles = json::array();
    if (r.estimate) {
        for (const auto& c : r.estimate->cycles) {
            cycles.push_back({{"start_frame", c.start_frame},
                              {"end_frame", c.end_frame},
                              {"ed_frame", c.ed_frame},
                              {"es_frame", c.es_frame},
                              {"v_ed", c.v_ed},
                              {"v_es", c.v_es},
                              {"ef", c.ef}});
        }
    }
    j["cycles"] = std::move(cycles);
    j["ef_mean"] = r.estimate ? json(r.estimate->ef_mean) : json(nullptr);
    j["ef_class"] = r.estimate ? json(std::string(to_string(r.estimate->ef_class))) : json(nullptr);
    j["warnings"] = r.warnings;
    j["status"] = std::string(to_string(r.status));
    return j.dump(2) + "\n";
}

std::string report_volumes_csv(const EstimateReport& r) {
    std::string out = "frame,area,length,volume_raw,volume,volume_filtered\n";
    for (const auto& f : r.frames) {
        out += std::to_string(f.frame) + ",";
        if (f.sample) {
            out += fixed6(f.sample->area) + "," + fixed6(f.sample->length) + "," + fixed6(f.sample->volume);
        } else {
            out += ",,";
        }
        out += "," + fixed6(f.volume) + "," + fixed6(f.filtered_volume) + "\n";
    }
    return out;
}

std::vector<EfRecord> parse_ef_csv(std::string_view text) {
    const auto rows = csv::split_rows(text);
    if (rows.empty()) throw Error(ErrorKind::MalformedGroup, "EF table is empty");
    const auto c_id = csv::column(rows.front(), {"video_id", "filename"});
    const auto c_pred = csv::column(rows.front(), {"ef_pred"});
    const auto c_true = csv::column(rows.front(), {"ef_true", "ef"});
    if (!c_id || (!c_pred && !c_true)) {
        throw Error(ErrorKind::MalformedGroup, "header must name video_id and ef_pred and/or ef_true");
    }

    std::vector<EfRecord> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = "line " + std::to_string(row.line);
        auto value = [&](std::optional<std::size_t> col) -> std::optional<double> {
            if (!col) return std::nullopt;
            if (*col >= row.fields.size()) throw Error(ErrorKind::MalformedGroup, where + " has too few columns");
            const auto v = csv::to_double(row.fields[*col]);
            if (!v || !std::isfinite(*v)) {
                throw Error(ErrorKind::MalformedGroup, where + ": '" + row.fields[*col] + "' is not a number");
            }
            return v;
        };
        if (*c_id >= row.fields.size()) throw Error(ErrorKind::MalformedGroup, where + " has too few columns");
        out.push_back({row.fields[*c_id], value(c_pred), value(c_true)});
    }
    return out;
}

std::string write_ef_csv(std::span<const EfRecord> records) {
    const bool with_truth =
        !records.empty() && std::all_of(records.begin(), records.end(), [](const EfRecord& r) { return r.ef_true; });
    std::string out = with_truth ? "video_id,ef_pred,ef_true\n" : "video_id,ef_pred\n";
    for (const auto& r : records) {
        out += r.video_id + "," + (r.ef_pred ? fixed6(*r.ef_pred) : std::string());
        if (with_truth) out += "," + fixed6(*r.ef_true);
        out += "\n";
    }
    return out;
}

EvaluationReport evaluate_ef(std::span<const EfRecord> predictions, std::span<const EfRecord> truth) {
    std::map<std::string, double> truth_by_id;
    for (const auto& t : truth) {
        if (t.ef_true) truth_by_id[t.video_id] = *t.ef_true;
    }

    std::vector<double> pred, ref;
    for (const auto& p : predictions) {
        if (!p.ef_pred) throw Error(ErrorKind::EmptyInput, p.video_id + " has no ef_pred");
        std::optional<double> t = p.ef_true;
        if (const auto it = truth_by_id.find(p.video_id); it != truth_by_id.end()) t = it->second;
        if (!t) throw Error(ErrorKind::LengthMismatch, "no ground truth for " + p.video_id);
        pred.push_back(*p.ef_pred);
        ref.push_back(*t);
    }
    if (pred.empty()) throw Error(ErrorKind::EmptyInput, "no predictions");

    EvaluationReport out;
    out.n = pred.size();
    out.mae_pct = 100.0 * mae(pred, ref);
    out.rmse_pct = 100.0 * rmse(pred, ref);
    std::vector<EfClass> cls_pred, cls_true;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        cls_pred.push_back(classify_ef(std::clamp(pred[i], 0.0, 1.0)));
        cls_true.push_back(classify_ef(ref[i]));
    }
    out.scores = confusion_and_scores(cls_true, cls_pred);
    return out;
}

std::string evaluation_to_json(const EvaluationReport& r) {
    const auto& s = r.scores;
    json per_class = json::object();
    for (std::size_t i = 0; i < kConfusionOrder.size(); ++i) {
        per_class[std::string(to_string(kConfusionOrder[i]))] = {
            {"precision", s.precision[i]}, {"recall", s.recall[i]}, {"f1", s.f1[i]}, {"support", s.matrix.support(i)}};
    }
    json matrix = json::array();
    for (const auto& row : s.matrix.counts) matrix.push_back(row);
    json order = json::array();
    for (auto c : kConfusionOrder) order.push_back(std::string(to_string(c)));

    const json j = {{"n", r.n},
                    {"mae", r.mae_pct},
                    {"rmse", r.rmse_pct},
                    {"class_order", order},
                    {"confusion", matrix},
                    {"per_class", per_class},
                    {"micro_f1", s.micro_f1},
                    {"macro_f1", s.macro_f1},
                    {"macro_recall", s.macro_recall},
                    {"macro_precision", s.macro_precision},
                    {"warnings", s.warnings}};
    return j.dump(2) + "\n";
}

}  // namespace lvef
