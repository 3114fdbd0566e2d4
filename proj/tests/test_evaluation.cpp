#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "sentibench/errors.hpp"
#include "sentibench/evaluation.hpp"
#include "sentibench/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace sentibench;

namespace {

Dataset balanced_dataset(int per_class) {
    Dataset ds;
    int id = 0;
    for (int i = 0; i < per_class; ++i) {
        ds.documents.push_back(testing::make_doc(id++, {"x"}, Polarity::Negative));
    }
    for (int i = 0; i < per_class; ++i) {
        ds.documents.push_back(testing::make_doc(id++, {"x"}, Polarity::Positive));
    }
    return ds;
}

std::vector<int> fold_sizes(const FoldPlan& plan) {
    std::vector<int> sizes(plan.k, 0);
    for (int fold : plan.assignment) {
        REQUIRE(fold >= 0);
        REQUIRE(fold < plan.k);
        ++sizes[fold];
    }
    return sizes;
}

} // namespace

TEST_SUITE("folds") {

TEST_CASE("2000 balanced documents at k=3 split 667/667/666") {
    Dataset ds = balanced_dataset(1000);
    FoldPlan plan = make_folds(ds, 3, 42);
    std::vector<int> sizes = fold_sizes(plan);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{666, 667, 667});
    // stratification: per-class sizes within one
    for (Polarity label : {Polarity::Negative, Polarity::Positive}) {
        std::vector<int> class_sizes(3, 0);
        for (const Document& doc : ds.documents) {
            if (doc.label == label) ++class_sizes[plan.assignment[doc.id]];
        }
        auto [lo, hi] = std::minmax_element(class_sizes.begin(), class_sizes.end());
        CHECK(*hi - *lo <= 1);
    }
}

TEST_CASE("k=2 with two documents per class forces one of each per fold") {
    Dataset ds = balanced_dataset(2);
    FoldPlan plan = make_folds(ds, 2, 7);
    for (int fold = 0; fold < 2; ++fold) {
        int pos = 0, neg = 0;
        for (const Document& doc : ds.documents) {
            if (plan.assignment[doc.id] != fold) continue;
            (doc.label == Polarity::Positive ? pos : neg) += 1;
        }
        CHECK(pos == 1);
        CHECK(neg == 1);
    }
}

TEST_CASE("same inputs and seed reproduce the assignment") {
    Dataset ds = balanced_dataset(50);
    FoldPlan a = make_folds(ds, 5, 99);
    FoldPlan b = make_folds(ds, 5, 99);
    CHECK(a.assignment == b.assignment);
    FoldPlan c = make_folds(ds, 5, 100);
    CHECK(a.assignment != c.assignment);
}

TEST_CASE("partition and stratification invariants for several k") {
    SplitMix64 rng(1234);
    for (int k : {2, 3, 5, 10}) {
        for (int round = 0; round < 5; ++round) {
            int per_class = k + static_cast<int>(rng.next_below(40));
            Dataset ds = balanced_dataset(per_class);
            FoldPlan plan = make_folds(ds, k, rng.next());
            // exhaustive and disjoint by construction of the assignment
            // vector; stratification promises per-class sizes within one
            std::vector<int> sizes = fold_sizes(plan);
            CHECK(sizes.size() == static_cast<std::size_t>(k));
            for (Polarity label : {Polarity::Negative, Polarity::Positive}) {
                std::vector<int> class_sizes(k, 0);
                for (const Document& doc : ds.documents) {
                    if (doc.label == label) ++class_sizes[plan.assignment[doc.id]];
                }
                auto [clo, chi] = std::minmax_element(class_sizes.begin(), class_sizes.end());
                CHECK(*chi - *clo <= 1);
            }
        }
    }
}

TEST_CASE("errors: k too small or class too small") {
    Dataset ds = balanced_dataset(3);
    CHECK_THROWS_AS(make_folds(ds, 1, 42), FoldError);
    CHECK_THROWS_AS(make_folds(ds, 4, 42), FoldError);
}

} // TEST_SUITE

TEST_SUITE("wilcoxon") {

TEST_CASE("identical samples: no effective pairs, p = 1") {
    WilcoxonResult r = wilcoxon_signed_rank({1, 2, 3}, {1, 2, 3});
    CHECK(r.n_effective == 0);
    CHECK(r.w_statistic == 0.0);
    CHECK(r.p_two_sided == 1.0);
    CHECK(r.method == WilcoxonMethod::Exact);
}

TEST_CASE("five positive differences: W = 15, two-sided p = 1/16") {
    WilcoxonResult r = wilcoxon_signed_rank({2, 4, 6, 8, 10}, {1, 2, 3, 4, 5});
    CHECK(r.n_effective == 5);
    CHECK(r.w_statistic == 15.0);
    CHECK(r.p_two_sided == 0.0625); // exactly 1/16
    CHECK(r.method == WilcoxonMethod::Exact);
}

TEST_CASE("exact p matches the enumeration oracle") {
    SplitMix64 rng(5150);
    for (int round = 0; round < 100; ++round) {
        int n = 1 + static_cast<int>(rng.next_below(12));
        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            // small integer grid provokes ties and zero differences
            a[i] = static_cast<double>(rng.next_below(6));
            b[i] = static_cast<double>(rng.next_below(6));
        }
        WilcoxonResult fast = wilcoxon_signed_rank(a, b);
        testing::WilcoxonOracle slow = testing::wilcoxon_enumeration(a, b);
        CHECK(fast.n_effective == slow.n_effective);
        CHECK(fast.w_statistic == doctest::Approx(slow.w).epsilon(1e-12));
        CHECK(fast.p_two_sided == doctest::Approx(slow.p_two_sided).epsilon(1e-12));
    }
}

TEST_CASE("swapping the samples complements W and keeps p") {
    SplitMix64 rng(62);
    for (int round = 0; round < 50; ++round) {
        int n = 2 + static_cast<int>(rng.next_below(15));
        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = rng.next_double();
            b[i] = rng.next_double();
        }
        WilcoxonResult ab = wilcoxon_signed_rank(a, b);
        WilcoxonResult ba = wilcoxon_signed_rank(b, a);
        CHECK(ab.p_two_sided == doctest::Approx(ba.p_two_sided).epsilon(1e-12));
        double total = ab.n_effective * (ab.n_effective + 1) / 2.0;
        CHECK(ab.w_statistic + ba.w_statistic == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("exact and normal approximation agree near the crossover") {
    SplitMix64 rng(2718);
    // test-side normal approximation with continuity correction
    auto normal_p = [](double w, int n) {
        double mean = n * (n + 1) / 4.0;
        double variance = n * (n + 1) * (2.0 * n + 1) / 24.0; // continuous draws: no ties
        double dev = std::abs(w - mean);
        dev = dev > 0.5 ? dev - 0.5 : 0.0;
        return std::erfc(dev / std::sqrt(variance) / std::sqrt(2.0));
    };
    for (int round = 0; round < 40; ++round) {
        int n = 20 + static_cast<int>(rng.next_below(6)); // 20..25
        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = rng.next_double();
            b[i] = rng.next_double();
        }
        WilcoxonResult exact = wilcoxon_signed_rank(a, b);
        REQUIRE(exact.method == WilcoxonMethod::Exact);
        REQUIRE(exact.n_effective == n);
        double approx = std::min(1.0, normal_p(exact.w_statistic, n));
        CHECK(std::abs(exact.p_two_sided - approx) <= 0.02);
    }
}

TEST_CASE("length mismatch and empty input are input errors") {
    CHECK_THROWS_AS(wilcoxon_signed_rank({1.0}, {1.0, 2.0}), InputError);
    CHECK_THROWS_AS(wilcoxon_signed_rank({}, {}), InputError);
}

TEST_CASE("normal approximation branch engages above n = 25") {
    SplitMix64 rng(1);
    std::vector<double> a(40), b(40);
    for (int i = 0; i < 40; ++i) {
        a[i] = rng.next_double();
        b[i] = rng.next_double();
    }
    WilcoxonResult r = wilcoxon_signed_rank(a, b);
    CHECK(r.method == WilcoxonMethod::NormalApprox);
    CHECK(r.p_two_sided >= 0.0);
    CHECK(r.p_two_sided <= 1.0);
}

} // TEST_SUITE

TEST_SUITE("evaluation") {

TEST_CASE("accuracy basics") {
    std::map<int, PredictionRecord> all_correct = {
        {0, {Polarity::Positive, Polarity::Positive}},
        {1, {Polarity::Negative, Polarity::Negative}}};
    CHECK(accuracy(all_correct) == 1.0);
    std::map<int, PredictionRecord> none = {{0, {Polarity::Positive, Polarity::Negative}}};
    CHECK(accuracy(none) == 0.0);
    std::map<int, PredictionRecord> three_of_four = {
        {0, {Polarity::Positive, Polarity::Positive}},
        {1, {Polarity::Positive, Polarity::Positive}},
        {2, {Polarity::Negative, Polarity::Negative}},
        {3, {Polarity::Negative, Polarity::Positive}}};
    CHECK(accuracy(three_of_four) == 0.75);
}

TEST_CASE("ensemble mode votes with Negative ties") {
    using P = Polarity;
    std::vector<std::vector<P>> votes = {{P::Positive}, {P::Positive}, {P::Negative}};
    CHECK(ensemble_mode(votes) == std::vector<P>{P::Positive});
    std::vector<std::vector<P>> tie = {{P::Positive}, {P::Negative}};
    CHECK(ensemble_mode(tie) == std::vector<P>{P::Negative});
    // single system is the identity
    std::vector<std::vector<P>> solo = {{P::Positive, P::Negative, P::Positive}};
    CHECK(ensemble_mode(solo) == solo[0]);
    CHECK_THROWS_AS(ensemble_mode({}), InputError);
    std::vector<std::vector<P>> ragged = {{P::Positive}, {}};
    CHECK_THROWS_AS(ensemble_mode(ragged), InputError);
}

TEST_CASE("cross-validation on a separable corpus is perfect for every classifier") {
    testing::TempDir dir;
    Dataset ds = load_corpus(testing::make_separable_corpus(dir, 3));
    REQUIRE(ds.size() == 6);
    FoldPlan plan = make_folds(ds, 3, 42);
    FeatureSpec features;
    features.families = {FeatureFamily::Unigram};
    for (ClassifierKind kind :
         {ClassifierKind::NaiveBayes, ClassifierKind::MaxEnt, ClassifierKind::Svm}) {
        ExperimentReport report = cross_validate(ds, features, {kind, TrainConfig{}}, plan);
        CHECK(report.mean_accuracy == 1.0);
        CHECK(report.per_instance.size() == 6);
        REQUIRE(report.per_fold_accuracy.size() == 3);
    }
}

TEST_CASE("per-instance table covers every document exactly once") {
    testing::TempDir dir;
    Dataset ds = load_corpus(testing::make_separable_corpus(dir, 6));
    FoldPlan plan = make_folds(ds, 4, 9);
    FeatureSpec features;
    features.families = {FeatureFamily::Unigram};
    ExperimentReport report =
        cross_validate(ds, features, {ClassifierKind::NaiveBayes, TrainConfig{}}, plan);
    CHECK(report.per_instance.size() == ds.size());
    std::set<int> ids;
    for (const auto& [doc_id, record] : report.per_instance) ids.insert(doc_id);
    CHECK(ids.size() == ds.size());
    // mean equals the arithmetic fold mean
    double mean = 0;
    for (double a : report.per_fold_accuracy) mean += a;
    mean /= report.per_fold_accuracy.size();
    CHECK(report.mean_accuracy == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("identical inputs give identical reports") {
    testing::TempDir dir;
    Dataset ds = load_corpus(testing::make_separable_corpus(dir, 4));
    FoldPlan plan = make_folds(ds, 2, 123);
    FeatureSpec features;
    features.families = {FeatureFamily::Unigram, FeatureFamily::Bigram};
    auto run = [&] {
        return cross_validate(ds, features, {ClassifierKind::Svm, TrainConfig{}}, plan);
    };
    ExperimentReport a = run();
    ExperimentReport b = run();
    CHECK(a.per_fold_accuracy == b.per_fold_accuracy);
    REQUIRE(a.per_instance.size() == b.per_instance.size());
    for (const auto& [doc_id, record] : a.per_instance) {
        CHECK(b.per_instance.at(doc_id).predicted == record.predicted);
    }
}

TEST_CASE("annotation-dependent features without annotations fail fast") {
    testing::TempDir dir;
    Dataset ds = load_corpus(testing::make_separable_corpus(dir, 3));
    FoldPlan plan = make_folds(ds, 3, 1);
    FeatureSpec features;
    features.families = {FeatureFamily::WordPos};
    CHECK_THROWS_AS(
        cross_validate(ds, features, {ClassifierKind::NaiveBayes, TrainConfig{}}, plan),
        ConfigError);
}

} // TEST_SUITE
