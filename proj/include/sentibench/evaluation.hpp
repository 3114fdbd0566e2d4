#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sentibench/annotations.hpp"
#include "sentibench/classifiers.hpp"
#include "sentibench/corpus.hpp"
#include "sentibench/features.hpp"
#include "sentibench/lexicon.hpp"

namespace sentibench {

struct FoldPlan {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<int> assignment; // doc_id -> fold index
};

// Stratified fold assignment: per class (Negative first, then Positive)
// the doc ids are Fisher-Yates shuffled with one SplitMix64 stream
// seeded by seed, then dealt round-robin starting at fold (class index
// mod k), so overall fold sizes also differ by at most one. Throws
// FoldError when k < 2 or a class has fewer than k documents.
FoldPlan make_folds(const Dataset& dataset, int k, std::uint64_t seed);

enum class WilcoxonMethod { Exact, NormalApprox };

const char* to_string(WilcoxonMethod m);

struct WilcoxonResult {
    int n_effective = 0;      // nonzero differences
    double w_statistic = 0.0; // sum of ranks of positive differences
    double p_two_sided = 1.0;
    WilcoxonMethod method = WilcoxonMethod::Exact;
};

// Paired signed-rank test of a against b. Zero differences are dropped;
// |d| ranks use average ranks for ties. Exact p (full enumeration of
// sign assignments) when n_effective <= 25, otherwise a normal
// approximation with tie-corrected variance and continuity correction.
// n_effective = 0 gives W = 0, p = 1. Throws InputError on length
// mismatch or empty input.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b);

struct PredictionRecord {
    Polarity gold = Polarity::Negative;
    Polarity predicted = Polarity::Negative;
};

struct SignificanceEntry {
    std::string system_a;
    std::string system_b;
    WilcoxonResult by_fold;     // paired per-fold accuracies
    WilcoxonResult by_instance; // paired per-instance 0/1 correctness
};

struct ExperimentReport {
    std::string experiment_name;
    std::vector<double> per_fold_accuracy;
    double mean_accuracy = 0.0;
    std::map<int, PredictionRecord> per_instance; // doc_id -> (gold, predicted)
    std::map<std::string, std::string> config;    // config echo
    std::vector<SignificanceEntry> significance;
};

enum class ClassifierKind { NaiveBayes, MaxEnt, Svm };

const char* to_string(ClassifierKind k);
ClassifierKind classifier_from_name(const std::string& name); // nb | maxent | svm

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::NaiveBayes;
    TrainConfig train;
};

// k-fold cross-validation under a fixed plan. For each fold the
// vocabulary is built from the training folds only, the model is
// trained on them, and the held-out fold is predicted. Identical
// inputs produce identical reports.
ExperimentReport cross_validate(const Dataset& dataset,
                                const FeatureSpec& feature_spec,
                                const ClassifierSpec& classifier_spec,
                                const FoldPlan& plan,
                                const Lexicon* lexicon = nullptr,
                                const std::map<int, AnnotatedDocument>* annotations = nullptr);

// Fraction of instances with predicted == gold.
double accuracy(const std::map<int, PredictionRecord>& per_instance);

// Per-instance majority label across systems; exact ties are Negative.
// predictions is systems x instances. Throws InputError when empty or
// ragged.
std::vector<Polarity> ensemble_mode(const std::vector<std::vector<Polarity>>& predictions);

} // namespace sentibench
