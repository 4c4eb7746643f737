#pragma once

// Beat analysis over a per-frame LV volume signal: median filtering,
// extrema detection, trough-to-trough cycle segmentation and the
// beat-averaged ejection fraction.

#include <optional>
#include <vector>

#include "lvef/metrics.hpp"

namespace lvef {

struct VolumeSignal {
    std::vector<double> volumes;
    std::optional<double> fps;
};

/// Centered running median with replicate padding.
/// Throws InvalidWindow unless window is odd, >= 1 and <= 2 * size - 1.
VolumeSignal median_filter(const VolumeSignal& signal, int window);

struct Extrema {
    std::vector<int> peaks;    // end-diastole candidates
    std::vector<int> troughs;  // end-systole candidates
};

/// Interior local maxima and minima (plateaus resolve to their middle
/// sample) with topographic prominence >= min_prominence, thinned so that
/// same-kind extrema are at least min_separation frames apart (the more
/// extreme one wins), then reconciled so peaks and troughs alternate.
Extrema find_extrema(const VolumeSignal& signal, int min_separation, double min_prominence);

/// Topographic prominence of each index in `peaks` (all must be maxima).
std::vector<double> peak_prominences(const std::vector<double>& x, const std::vector<int>& peaks);

struct CardiacCycle {
    int start_frame = 0;  // trough
    int end_frame = 0;    // next trough
    int ed_frame = 0;
    int es_frame = 0;
    double v_ed = 0.0;
    double v_es = 0.0;
    double ef = 0.0;
};

/// One cycle per adjacent trough pair that contains a peak. V_ED is the
/// largest contained peak; V_ES is the smaller of the two bounding troughs.
/// Cycles with V_ED <= V_ES are dropped. Throws NoCycles if none remain.
std::vector<CardiacCycle> segment_cycles(const VolumeSignal& signal, const std::vector<int>& peaks,
                                         const std::vector<int>& troughs);

struct EfEstimate {
    std::vector<CardiacCycle> cycles;
    double ef_mean = 0.0;
    EfClass ef_class = EfClass::pEF;
};

/// Unweighted mean of per-cycle EF. Throws NoCycles for an empty list.
EfEstimate estimate_ef(const std::vector<CardiacCycle>& cycles);

struct BeatParams {
    int median_window = 5;
    double min_prominence_frac = 0.05;       // of the filtered signal's range
    std::optional<int> min_separation;        // default max(5, floor(fps / 4))
};

int default_min_separation(std::optional<double> fps);

}  // namespace lvef
