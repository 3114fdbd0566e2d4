#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sentibench/evaluation.hpp"

namespace sentibench {

// A named experiment: either a rule-based lexicon run over the whole
// corpus or a cross-validated feature/classifier combination.
struct Preset {
    enum class Kind { Lexicon, CrossValidated };

    std::string name;
    Kind kind = Kind::CrossValidated;

    ScoreConfig score;          // Lexicon presets
    FeatureSpec features;       // CrossValidated presets
    ClassifierKind classifier = ClassifierKind::NaiveBayes;
    int default_max_features = 10000;
};

// The full preset table: 3 lexicon presets plus 13 feature rows x
// {svm, nb, maxent}. Names are stable CLI identifiers.
const std::vector<Preset>& preset_table();
const Preset& find_preset(const std::string& name); // throws ConfigError

// Either a preset name or an explicit (families, classifier) pair.
struct ExperimentConfig {
    std::filesystem::path corpus_path;
    std::optional<std::filesystem::path> lexicon_path;
    std::optional<std::filesystem::path> annotations_path;
    std::string experiment;                   // preset name; empty for explicit runs
    std::vector<std::string> families;        // explicit family names
    std::optional<std::string> classifier;    // explicit classifier name
    int k = 3;
    std::uint64_t seed = 42;
    std::optional<int> max_features; // overrides the preset default
    TrainConfig train;               // classifier hyperparameters
};

// Loads the referenced inputs and executes the preset. Lexicon presets
// score every document once (no folds); ML presets run cross_validate.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Rule-based scoring with an explicit configuration (the score-lexicon
// command); accepts any weights/negation combination.
ExperimentReport score_lexicon(const std::filesystem::path& corpus_path,
                               const std::filesystem::path& lexicon_path,
                               const ScoreConfig& score);

struct SweepRun {
    int max_features = 0;
    std::vector<double> per_fold_accuracy;
    double mean_accuracy = 0.0;
};

struct SweepReport {
    std::string experiment_name;
    std::vector<SweepRun> runs;
    std::vector<SignificanceEntry> significance; // pairwise between counts
    std::map<std::string, std::string> config;
};

// Same experiment at each feature count (same folds), with pairwise
// Wilcoxon results between counts. Throws ConfigError on empty counts.
SweepReport sweep_features(const ExperimentConfig& config, const std::vector<int>& counts);

// Mode-vote ensemble over previously written reports. All reports must
// cover the same doc_id set with the same gold labels (InputError
// otherwise).
ExperimentReport combo(const std::vector<std::filesystem::path>& report_paths);
ExperimentReport combo_reports(const std::vector<ExperimentReport>& reports);

// --- report (de)serialization: documented JSON, byte-stable ---------------

std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);
void write_report(const ExperimentReport& report, const std::filesystem::path& path);
ExperimentReport read_report(const std::filesystem::path& path);

std::string sweep_to_json(const SweepReport& report);
void write_sweep(const SweepReport& report, const std::filesystem::path& path);

} // namespace sentibench
