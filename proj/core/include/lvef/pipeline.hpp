#pragma once

// Per-video estimation pipeline, its JSON report, and EF list CSV files.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvef/beat_analysis.hpp"
#include "lvef/error.hpp"
#include "lvef/lv_measure.hpp"
#include "lvef/metrics.hpp"

namespace lvef {

inline constexpr int kReportSchemaVersion = 1;

struct EstimateParams {
    BeatParams beat;
    LandmarkOptions landmarks;
    int workers = 1;  // threads for per-frame volumes; output does not depend on it
};

struct FrameDiagnostic {
    int frame = 0;
    std::optional<VolumeSample> sample;  // empty when the frame failed
    std::optional<ErrorKind> error_kind;
    std::string error;
    double volume = 0.0;           // after interpolation over failed frames
    double filtered_volume = 0.0;  // after the median filter
};

enum class EstimateStatus { Ok, NoCycles, NoValidFrames };
std::string_view to_string(EstimateStatus s) noexcept;

struct EstimateReport {
    std::string video_id;
    std::optional<double> fps;
    int median_window = 0;  // as applied, may be shrunk for short videos
    double min_prominence_frac = 0.0;
    double min_prominence = 0.0;  // absolute, in volume units
    int min_separation = 0;
    std::vector<FrameDiagnostic> frames;
    Extrema extrema;
    std::optional<EfEstimate> estimate;
    std::vector<std::string> warnings;
    EstimateStatus status = EstimateStatus::Ok;
};

/// volume_from_mask per frame -> interpolation over failed frames ->
/// median filter -> extrema -> cycles -> EF. A video without cycles yields
/// a partial report with status NoCycles rather than an exception.
/// Throws EmptyInput for zero frames.
EstimateReport run_estimate(std::span<const BinaryMask> masks, std::optional<double> fps,
                            const EstimateParams& params = {}, std::string video_id = {});

/// Deterministic, pretty-printed JSON with a trailing newline.
std::string report_to_json(const EstimateReport& report);

/// frame,area,length,volume_raw,volume,volume_filtered
std::string report_volumes_csv(const EstimateReport& report);

struct EfRecord {
    std::string video_id;
    std::optional<double> ef_pred;
    std::optional<double> ef_true;
};

/// Columns video_id, ef_pred and/or ef_true, in any order. EF is a fraction.
/// Throws MalformedGroup naming the bad line.
std::vector<EfRecord> parse_ef_csv(std::string_view text);

/// video_id,ef_pred[,ef_true] with 6 decimals; ef_true only if every record has one.
std::string write_ef_csv(std::span<const EfRecord> records);

struct EvaluationReport {
    std::size_t n = 0;
    double mae_pct = 0.0;   // x100, percentage points
    double rmse_pct = 0.0;  // x100
    ClassificationScores scores;
};

/// Joins predictions with truth by video_id (truth may come from the
/// prediction rows themselves). Throws EmptyInput or LengthMismatch when a
/// prediction has no truth.
EvaluationReport evaluate_ef(std::span<const EfRecord> predictions, std::span<const EfRecord> truth);

std::string evaluation_to_json(const EvaluationReport& report);

}  // namespace lvef
