#include "lvef/beat_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lvef/error.hpp"

namespace lvef {

namespace {

// Interior local maxima; a flat top reports its middle sample.
std::vector<int> local_maxima(const std::vector<double>& x) {
    std::vector<int> out;
    const int n = static_cast<int>(x.size());
    int i = 1;
    const int i_max = n - 1;
    while (i < i_max) {
        if (x[i - 1] < x[i]) {
            int ahead = i + 1;
            while (ahead < i_max && x[ahead] == x[i]) ++ahead;
            if (x[ahead] < x[i]) {
                out.push_back((i + ahead - 1) / 2);
                i = ahead;
            }
        }
        ++i;
    }
    return out;
}

std::vector<int> select_peaks(const std::vector<double>& x, int min_separation, double min_prominence) {
    std::vector<int> candidates = local_maxima(x);
    const std::vector<double> prom = peak_prominences(x, candidates);
    std::vector<int> peaks;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (prom[i] >= min_prominence) peaks.push_back(candidates[i]);
    }

    // Highest first; a kept peak suppresses neighbours closer than min_separation.
    std::vector<std::size_t> order(peaks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return x[peaks[l]] > x[peaks[r]]; });
    std::vector<bool> keep(peaks.size(), true);
    for (std::size_t oi : order) {
        if (!keep[oi]) continue;
        for (std::size_t k = 0; k < peaks.size(); ++k) {
            if (k != oi && keep[k] && std::abs(peaks[k] - peaks[oi]) < min_separation) keep[k] = false;
        }
    }
    std::vector<int> out;
    for (std::size_t k = 0; k < peaks.size(); ++k) {
        if (keep[k]) out.push_back(peaks[k]);
    }
    return out;
}

}  // namespace

VolumeSignal median_filter(const VolumeSignal& signal, int window) {
    const int n = static_cast<int>(signal.volumes.size());
    if (window < 1 || window % 2 == 0) {
        throw Error(ErrorKind::InvalidWindow, "median window must be odd and positive, got " + std::to_string(window));
    }
    if (n == 0 || window > 2 * n - 1) {
        throw Error(ErrorKind::InvalidWindow, "median window " + std::to_string(window) + " exceeds 2 * " +
                                                  std::to_string(n) + " - 1 samples");
    }
    const int half = window / 2;
    VolumeSignal out{std::vector<double>(signal.volumes.size()), signal.fps};
    std::vector<double> buf(static_cast<std::size_t>(window));
    for (int i = 0; i < n; ++i) {
        for (int k = -half; k <= half; ++k) {
            buf[static_cast<std::size_t>(k + half)] = signal.volumes[static_cast<std::size_t>(std::clamp(i + k, 0, n - 1))];
        }
        std::nth_element(buf.begin(), buf.begin() + half, buf.end());
        out.volumes[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(half)];
    }
    return out;
}

std::vector<double> peak_prominences(const std::vector<double>& x, const std::vector<int>& peaks) {
    std::vector<double> out;
    out.reserve(peaks.size());
    const int n = static_cast<int>(x.size());
    for (int p : peaks) {
        double left_min = x[p];
        for (int i = p; i >= 0 && x[i] <= x[p]; --i) left_min = std::min(left_min, x[i]);
        double right_min = x[p];
        for (int i = p; i < n && x[i] <= x[p]; ++i) right_min = std::min(right_min, x[i]);
        out.push_back(x[p] - std::max(left_min, right_min));
    }
    return out;
}

Extrema find_extrema(const VolumeSignal& signal, int min_separation, double min_prominence) {
    const auto& x = signal.volumes;
    std::vector<double> neg(x.size());
    std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });

    const int sep = std::max(1, min_separation);
    const std::vector<int> peaks = select_peaks(x, sep, min_prominence);
    const std::vector<int> troughs = select_peaks(neg, sep, min_prominence);

    struct Item {
        int index;
        bool peak;
    };
    std::vector<Item> merged;
    for (int p : peaks) merged.push_back({p, true});
    for (int t : troughs) merged.push_back({t, false});
    std::sort(merged.begin(), merged.end(), [](const Item& l, const Item& r) { return l.index < r.index; });

    // Same-kind runs collapse to their most extreme member.
    std::vector<Item> alternating;
    for (const Item& it : merged) {
        if (!alternating.empty() && alternating.back().peak == it.peak) {
            const double cur = x[alternating.back().index];
            const double cand = x[it.index];
            if (it.peak ? cand > cur : cand < cur) alternating.back() = it;
            continue;
        }
        alternating.push_back(it);
    }

    Extrema out;
    for (const Item& it : alternating) (it.peak ? out.peaks : out.troughs).push_back(it.index);
    return out;
}

std::vector<CardiacCycle> segment_cycles(const VolumeSignal& signal, const std::vector<int>& peaks,
                                         const std::vector<int>& troughs) {
    const auto& x = signal.volumes;
    const int n = static_cast<int>(x.size());
    auto check = [n](int idx) {
        if (idx < 0 || idx >= n) {
            throw Error(ErrorKind::OutOfRange, "extremum index " + std::to_string(idx) + " outside the signal");
        }
    };
    for (int p : peaks) check(p);
    for (int t : troughs) check(t);

    std::vector<int> tr = troughs;
    std::sort(tr.begin(), tr.end());
    if (tr.size() < 2) {
        throw Error(ErrorKind::NoCycles, "need at least 2 troughs, found " + std::to_string(tr.size()));
    }

    std::vector<CardiacCycle> cycles;
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
        const int start = tr[k];
        const int end = tr[k + 1];
        int ed = -1;
        for (int p : peaks) {
            if (p > start && p < end && (ed < 0 || x[p] > x[ed])) ed = p;
        }
        if (ed < 0) continue;

        CardiacCycle c;
        c.start_frame = start;
        c.end_frame = end;
        c.ed_frame = ed;
        c.es_frame = x[start] <= x[end] ? start : end;
        c.v_ed = x[ed];
        c.v_es = x[c.es_frame];
        if (c.v_ed <= c.v_es) continue;
        c.ef = (c.v_ed - c.v_es) / c.v_ed;
        cycles.push_back(c);
    }
    if (cycles.empty()) throw Error(ErrorKind::NoCycles, "no trough pair encloses a peak");
    return cycles;
}

EfEstimate estimate_ef(const std::vector<CardiacCycle>& cycles) {
    if (cycles.empty()) throw Error(ErrorKind::NoCycles, "no cardiac cycles to average");
    EfEstimate est;
    est.cycles = cycles;
    double sum = 0.0;
    for (const auto& c : cycles) sum += c.ef;
    est.ef_mean = sum / static_cast<double>(cycles.size());
    est.ef_class = classify_ef(std::clamp(est.ef_mean, 0.0, 1.0));
    return est;
}

int default_min_separation(std::optional<double> fps) {
    if (!fps || !(*fps > 0.0)) return 5;
    return std::max(5, static_cast<int>(std::floor(*fps / 4.0)));
}

}  // namespace lvef
