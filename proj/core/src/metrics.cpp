#include "lvef/metrics.hpp"

#include <cmath>
#include <string>

#include "lvef/error.hpp"

namespace lvef {

namespace {

void check_pair(std::span<const double> predicted, std::span<const double> truth) {
    if (predicted.size() != truth.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(predicted.size()) + " predictions vs " +
                                                   std::to_string(truth.size()) + " truth values");
    }
    if (predicted.empty()) throw Error(ErrorKind::EmptyInput, "no values to compare");
}

double safe_ratio(long long num, long long den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view to_string(EfClass c) noexcept {
    switch (c) {
        case EfClass::rEF: return "rEF";
        case EfClass::mrEF: return "mrEF";
        case EfClass::pEF: return "pEF";
    }
    return "?";
}

EfClass ef_class_from_string(std::string_view name) {
    if (name == "rEF") return EfClass::rEF;
    if (name == "mrEF") return EfClass::mrEF;
    if (name == "pEF") return EfClass::pEF;
    throw Error(ErrorKind::OutOfRange, "unknown EF class '" + std::string(name) + "'");
}

EfClass classify_ef(double ef) {
    if (!(ef >= 0.0 && ef <= 1.0)) {
        throw Error(ErrorKind::OutOfRange, "ejection fraction " + std::to_string(ef) + " is outside [0, 1]");
    }
    if (ef < 0.40) return EfClass::rEF;
    if (ef < 0.50) return EfClass::mrEF;
    return EfClass::pEF;
}

double dice(const BinaryMask& x, const BinaryMask& y, const DiceOptions& options) {
    if (x.width() != y.width() || x.height() != y.height()) {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(x.width()) + "x" + std::to_string(x.height()) +
                                                      " vs " + std::to_string(y.width()) + "x" +
                                                      std::to_string(y.height()));
    }
    const auto px = x.pixels();
    const auto py = y.pixels();
    std::size_t nx = 0, ny = 0, both = 0;
    for (std::size_t i = 0; i < px.size(); ++i) {
        nx += px[i];
        ny += py[i];
        both += px[i] & py[i];
    }
    if (nx + ny == 0) {
        if (options.empty_is_error) throw Error(ErrorKind::EmptyInput, "both masks are empty");
        return 1.0;
    }
    return 2.0 * static_cast<double>(both) / static_cast<double>(nx + ny);
}

double mae(std::span<const double> predicted, std::span<const double> truth) {
    check_pair(predicted, truth);
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) sum += std::abs(predicted[i] - truth[i]);
    return sum / static_cast<double>(predicted.size());
}

double rmse(std::span<const double> predicted, std::span<const double> truth) {
    check_pair(predicted, truth);
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double d = predicted[i] - truth[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(predicted.size()));
}

std::size_t confusion_index(EfClass c) noexcept {
    switch (c) {
        case EfClass::pEF: return 0;
        case EfClass::rEF: return 1;
        case EfClass::mrEF: return 2;
    }
    return 0;
}

long long ConfusionMatrix::total() const noexcept {
    long long t = 0;
    for (const auto& row : counts)
        for (long long v : row) t += v;
    return t;
}

long long ConfusionMatrix::trace() const noexcept { return counts[0][0] + counts[1][1] + counts[2][2]; }

long long ConfusionMatrix::support(std::size_t cls) const noexcept {
    return counts[cls][0] + counts[cls][1] + counts[cls][2];
}

long long ConfusionMatrix::predicted(std::size_t cls) const noexcept {
    return counts[0][cls] + counts[1][cls] + counts[2][cls];
}

ClassificationScores scores_from_confusion(const ConfusionMatrix& matrix) {
    ClassificationScores s;
    s.matrix = matrix;
    for (std::size_t c = 0; c < 3; ++c) {
        const long long tp = matrix.counts[c][c];
        const long long support = matrix.support(c);
        const long long predicted = matrix.predicted(c);
        const std::string name(to_string(kConfusionOrder[c]));
        if (support == 0) s.warnings.push_back("class " + name + " has no true samples; recall counted as 0");
        if (predicted == 0) s.warnings.push_back("class " + name + " is never predicted; precision counted as 0");
        s.precision[c] = safe_ratio(tp, predicted);
        s.recall[c] = safe_ratio(tp, support);
        s.f1[c] = safe_ratio(2 * tp, support + predicted);
    }
    s.micro_f1 = safe_ratio(matrix.trace(), matrix.total());
    for (std::size_t c = 0; c < 3; ++c) {
        s.macro_f1 += s.f1[c] / 3.0;
        s.macro_recall += s.recall[c] / 3.0;
        s.macro_precision += s.precision[c] / 3.0;
    }
    return s;
}

ClassificationScores confusion_and_scores(std::span<const EfClass> truth, std::span<const EfClass> predicted) {
    if (truth.size() != predicted.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(truth.size()) + " truth labels vs " +
                                                   std::to_string(predicted.size()) + " predictions");
    }
    if (truth.empty()) throw Error(ErrorKind::EmptyInput, "no labels to score");
    ConfusionMatrix m;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++m.counts[confusion_index(truth[i])][confusion_index(predicted[i])];
    }
    return scores_from_confusion(m);
}

}  // namespace lvef
