#pragma once

// Segmentation and ejection-fraction evaluation metrics.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvef/geometry.hpp"

namespace lvef {

/// Ejection-fraction ranges. Ordered by increasing EF.
///   rEF  : EF < 0.40
///   mrEF : 0.40 <= EF < 0.50
///   pEF  : EF >= 0.50
/// The half-open [0.49, 0.50) band belongs to mrEF so the partition of
/// [0, 1] is exhaustive.
enum class EfClass { rEF = 0, mrEF = 1, pEF = 2 };

std::string_view to_string(EfClass c) noexcept;
/// Throws OutOfRange for unknown names.
EfClass ef_class_from_string(std::string_view name);

/// Throws OutOfRange unless 0 <= ef <= 1.
EfClass classify_ef(double ef);

struct DiceOptions {
    /// Two empty masks score 1.0 unless this is set, in which case they
    /// raise EmptyInput.
    bool empty_is_error = false;
};

/// 2|X n Y| / (|X| + |Y|). Throws DimensionMismatch.
double dice(const BinaryMask& x, const BinaryMask& y, const DiceOptions& options = {});

/// Throws LengthMismatch or EmptyInput.
double mae(std::span<const double> predicted, std::span<const double> truth);
double rmse(std::span<const double> predicted, std::span<const double> truth);

/// Confusion-matrix class order: pEF, rEF, mrEF.
inline constexpr std::array<EfClass, 3> kConfusionOrder = {EfClass::pEF, EfClass::rEF, EfClass::mrEF};
std::size_t confusion_index(EfClass c) noexcept;

/// counts[true][predicted], rows and columns in kConfusionOrder.
struct ConfusionMatrix {
    std::array<std::array<long long, 3>, 3> counts{};

    long long total() const noexcept;
    long long trace() const noexcept;
    long long support(std::size_t cls) const noexcept;    // row sum
    long long predicted(std::size_t cls) const noexcept;  // column sum
};

struct ClassificationScores {
    ConfusionMatrix matrix;
    std::array<double, 3> precision{};  // kConfusionOrder
    std::array<double, 3> recall{};
    std::array<double, 3> f1{};
    double micro_f1 = 0.0;
    double macro_f1 = 0.0;
    double macro_recall = 0.0;
    double macro_precision = 0.0;
    std::vector<std::string> warnings;
};

/// Per-class and averaged scores. Classes with no support or no predictions
/// contribute 0 to the macro averages and add a warning.
ClassificationScores scores_from_confusion(const ConfusionMatrix& matrix);

/// Throws LengthMismatch or EmptyInput.
ClassificationScores confusion_and_scores(std::span<const EfClass> truth, std::span<const EfClass> predicted);

}  // namespace lvef
