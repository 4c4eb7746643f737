#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "lvef/error.hpp"
#include "lvef/metrics.hpp"

using namespace lvef;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no lvef::Error thrown";
    return ErrorKind::IoError;
}

// Reference three-class confusion counts: rows = true class, columns = predicted, order pEF, rEF, mrEF.
ConfusionMatrix reference_matrix() {
    ConfusionMatrix m;
    m.counts = {{{932, 6, 53}, {28, 86, 46}, {76, 11, 38}}};
    return m;
}

}  // namespace

TEST(Dice, Examples) {
    BinaryMask a(4, 4), b(4, 4);
    a.set(0, 0);
    a.set(1, 0);
    EXPECT_DOUBLE_EQ(dice(a, a), 1.0);
    b.set(3, 3);
    b.set(2, 3);
    EXPECT_DOUBLE_EQ(dice(a, b), 0.0);
    BinaryMask c(4, 4);
    c.set(1, 0);
    c.set(1, 1);
    EXPECT_DOUBLE_EQ(dice(a, c), 0.5);
}

TEST(Dice, EmptyPairAndMismatch) {
    EXPECT_DOUBLE_EQ(dice(BinaryMask(3, 3), BinaryMask(3, 3)), 1.0);
    EXPECT_EQ(kind_of([] { dice(BinaryMask(3, 3), BinaryMask(3, 3), {.empty_is_error = true}); }), ErrorKind::EmptyInput);
    EXPECT_EQ(kind_of([] { dice(BinaryMask(3, 3), BinaryMask(3, 4)); }), ErrorKind::DimensionMismatch);
}

TEST(Mae, Examples) {
    const std::vector<double> p = {50, 60}, t = {55, 58};
    EXPECT_DOUBLE_EQ(mae(p, p), 0.0);
    EXPECT_DOUBLE_EQ(mae(p, t), 3.5);
    const std::vector<double> one = {1};
    EXPECT_EQ(kind_of([&] { mae(p, one); }), ErrorKind::LengthMismatch);
    EXPECT_EQ(kind_of([] { mae({}, {}); }), ErrorKind::EmptyInput);
}

TEST(Rmse, Examples) {
    const std::vector<double> zero = {0, 0};
    const std::vector<double> unit = {1, -1};
    EXPECT_DOUBLE_EQ(rmse(unit, unit), 0.0);
    EXPECT_DOUBLE_EQ(rmse(unit, zero), 1.0);
    const std::vector<double> e = {3, 4};
    EXPECT_NEAR(rmse(e, zero), std::sqrt(12.5), 1e-12);
    EXPECT_NEAR(rmse(e, zero), 3.5355, 1e-4);
}

TEST(ClassifyEf, Thresholds) {
    EXPECT_EQ(classify_ef(0.35), EfClass::rEF);
    EXPECT_EQ(classify_ef(0.45), EfClass::mrEF);
    EXPECT_EQ(classify_ef(0.55), EfClass::pEF);
    EXPECT_EQ(classify_ef(0.3999999), EfClass::rEF);
    EXPECT_EQ(classify_ef(0.40), EfClass::mrEF);
    EXPECT_EQ(classify_ef(0.495), EfClass::mrEF);
    EXPECT_EQ(classify_ef(0.50), EfClass::pEF);
    EXPECT_EQ(classify_ef(0.0), EfClass::rEF);
    EXPECT_EQ(classify_ef(1.0), EfClass::pEF);
    EXPECT_EQ(kind_of([] { classify_ef(-0.01); }), ErrorKind::OutOfRange);
    EXPECT_EQ(kind_of([] { classify_ef(1.01); }), ErrorKind::OutOfRange);
    EXPECT_EQ(kind_of([] { classify_ef(std::nan("")); }), ErrorKind::OutOfRange);
}

TEST(EfClassNames, RoundTrip) {
    for (EfClass c : kConfusionOrder) EXPECT_EQ(ef_class_from_string(to_string(c)), c);
    EXPECT_EQ(kind_of([] { ef_class_from_string("HFpEF"); }), ErrorKind::OutOfRange);
}

TEST(Scores, ReferenceConfusionMatrix) {
    const ClassificationScores s = scores_from_confusion(reference_matrix());
    EXPECT_EQ(s.matrix.total(), 1276);
    EXPECT_EQ(s.matrix.trace(), 1056);
    EXPECT_NEAR(s.micro_f1, 1056.0 / 1276.0, 1e-12);
    EXPECT_NEAR(s.micro_f1, 0.828, 1e-3);
    EXPECT_NEAR(s.macro_f1, 0.621, 1e-3);
    EXPECT_NEAR(s.macro_recall, 0.593, 1e-3);
    EXPECT_NEAR(s.macro_precision, 0.671, 1e-3);
    EXPECT_NEAR(s.f1[confusion_index(EfClass::pEF)], 0.92, 5e-3);
    EXPECT_NEAR(s.f1[confusion_index(EfClass::rEF)], 0.65, 5e-3);
    EXPECT_NEAR(s.f1[confusion_index(EfClass::mrEF)], 0.29, 5e-3);
    EXPECT_TRUE(s.warnings.empty());
}

TEST(Scores, FromLabelListsMatchesMatrix) {
    std::vector<EfClass> truth, pred;
    const auto m = reference_matrix();
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            for (long long k = 0; k < m.counts[r][c]; ++k) {
                truth.push_back(kConfusionOrder[r]);
                pred.push_back(kConfusionOrder[c]);
            }
        }
    }
    const ClassificationScores s = confusion_and_scores(truth, pred);
    EXPECT_EQ(s.matrix.counts, m.counts);
    EXPECT_DOUBLE_EQ(s.macro_f1, scores_from_confusion(m).macro_f1);
}

TEST(Scores, PerfectPredictionsAndErrors) {
    const std::vector<EfClass> labels = {EfClass::pEF, EfClass::rEF, EfClass::mrEF, EfClass::pEF};
    const ClassificationScores s = confusion_and_scores(labels, labels);
    EXPECT_DOUBLE_EQ(s.micro_f1, 1.0);
    EXPECT_DOUBLE_EQ(s.macro_f1, 1.0);
    const std::vector<EfClass> short_list = {EfClass::pEF};
    EXPECT_EQ(kind_of([&] { confusion_and_scores(labels, short_list); }), ErrorKind::LengthMismatch);
    EXPECT_EQ(kind_of([] { confusion_and_scores({}, {}); }), ErrorKind::EmptyInput);
}

TEST(Scores, MissingClassWarns) {
    const std::vector<EfClass> labels = {EfClass::pEF, EfClass::pEF};
    const ClassificationScores s = confusion_and_scores(labels, labels);
    EXPECT_EQ(s.warnings.size(), 4u);
    EXPECT_NEAR(s.macro_f1, 1.0 / 3.0, 1e-12);
}

TEST(Metrics, PropertyDiceSymmetricBoundedAndIdentity) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        gen::Rng rng(seed);
        const int w = gen::uniform_int(rng, 1, 24), h = gen::uniform_int(rng, 1, 24);
        const BinaryMask x = gen::noise_mask(rng, w, h, gen::uniform(rng, 0, 0.7));
        const BinaryMask y = gen::noise_mask(rng, w, h, gen::uniform(rng, 0, 0.7));
        const double d = dice(x, y);
        ASSERT_EQ(d, dice(y, x)) << "seed " << seed;
        ASSERT_GE(d, 0.0);
        ASSERT_LE(d, 1.0);
        ASSERT_EQ(d == 1.0, x == y) << "seed " << seed;
    }
}

TEST(Metrics, PropertyMaeAtMostRmse) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        gen::Rng rng(seed);
        const int n = gen::uniform_int(rng, 1, 50);
        std::vector<double> p, t;
        for (int i = 0; i < n; ++i) {
            p.push_back(gen::uniform(rng, 0, 1));
            t.push_back(gen::uniform(rng, 0, 1));
        }
        ASSERT_LE(mae(p, t), rmse(p, t) * (1 + 1e-12)) << "seed " << seed;
    }
    // equality when all absolute errors match
    const std::vector<double> p = {0.1, 0.9, 0.5}, t = {0.2, 0.8, 0.6};
    EXPECT_NEAR(mae(p, t), rmse(p, t), 1e-15);
}

TEST(Metrics, PropertyClassifyMonotone) {
    int prev = -1;
    for (int k = 0; k <= 1000; ++k) {
        const int cls = static_cast<int>(classify_ef(k / 1000.0));
        ASSERT_GE(cls, prev) << "ef " << k / 1000.0;
        prev = cls;
    }
}

TEST(Metrics, PropertyMicroF1IsAccuracy) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        gen::Rng rng(seed);
        ConfusionMatrix m;
        for (auto& row : m.counts)
            for (auto& v : row) v = gen::uniform_int(rng, 0, 50);
        if (m.total() == 0) continue;
        const auto s = scores_from_confusion(m);
        EXPECT_DOUBLE_EQ(s.micro_f1, static_cast<double>(m.trace()) / m.total());
    }
}
