#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "sentibench/errors.hpp"
#include "sentibench/experiments.hpp"

namespace sentibench {

namespace {

Preset lexicon_preset(std::string name, bool weights, bool negation) {
    Preset p;
    p.name = std::move(name);
    p.kind = Preset::Kind::Lexicon;
    p.score.use_weights = weights;
    if (negation) p.score.negation_token = "n't";
    return p;
}

Preset ml_preset(const std::string& stem, ClassifierKind clf, std::set<FeatureFamily> families,
                 std::set<CoarseTag> pos_tags = {}) {
    Preset p;
    p.name = stem + "-" + to_string(clf);
    p.kind = Preset::Kind::CrossValidated;
    p.features.families = std::move(families);
    p.features.pos_only_tags = std::move(pos_tags);
    p.classifier = clf;
    // maxent runs with the smaller feature budget
    p.default_max_features = clf == ClassifierKind::MaxEnt ? 5000 : 10000;
    p.features.max_features = p.default_max_features;
    return p;
}

std::vector<Preset> build_preset_table() {
    using FF = FeatureFamily;
    std::vector<Preset> presets;
    presets.push_back(lexicon_preset("lexicon-no-weights", false, false));
    presets.push_back(lexicon_preset("lexicon-weights", true, false));
    presets.push_back(lexicon_preset("lexicon-weights-negation", true, true));

    struct Row {
        const char* stem;
        std::set<FF> families;
        std::set<CoarseTag> tags;
    };
    const std::vector<Row> rows = {
        {"unigram", {FF::Unigram}, {}},
        {"bigram", {FF::Bigram}, {}},
        {"trigram", {FF::Trigram}, {}},
        {"uni-bi", {FF::Unigram, FF::Bigram}, {}},
        {"uni-bi-tri", {FF::Unigram, FF::Bigram, FF::Trigram}, {}},
        {"word-pos", {FF::WordPos}, {}},
        {"word-and-word-pos", {FF::WordAndWordPos}, {}},
        {"lexicon-words", {FF::Unigram, FF::LexiconWords}, {}},
        {"adj-only", {FF::PosOnly}, {CoarseTag::Adj}},
        {"verb-only", {FF::PosOnly}, {CoarseTag::Verb}},
        {"noun-only", {FF::PosOnly}, {CoarseTag::Noun}},
        {"adj-verb-noun", {FF::PosOnly}, {CoarseTag::Adj, CoarseTag::Verb, CoarseTag::Noun}},
        {"dep-pair", {FF::DependencyPair}, {}},
    };
    for (const Row& row : rows) {
        for (ClassifierKind clf :
             {ClassifierKind::Svm, ClassifierKind::NaiveBayes, ClassifierKind::MaxEnt}) {
            presets.push_back(ml_preset(row.stem, clf, row.families, row.tags));
        }
    }
    return presets;
}

} // namespace

const std::vector<Preset>& preset_table() {
    static const std::vector<Preset> table = build_preset_table();
    return table;
}

const Preset& find_preset(const std::string& name) {
    for (const Preset& p : preset_table()) {
        if (p.name == name) return p;
    }
    throw ConfigError("unknown experiment preset '" + name + "'");
}

namespace {

std::string compact_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

std::string family_list(const FeatureSpec& spec) {
    std::string out;
    for (FeatureFamily f : spec.families) {
        if (!out.empty()) out += ",";
        out += to_string(f);
        if (f == FeatureFamily::PosOnly) {
            out += ":";
            bool first = true;
            for (CoarseTag tag : spec.pos_only_tags) {
                if (!first) out += "|";
                out += to_string(tag);
                first = false;
            }
        }
    }
    return out;
}

} // namespace

namespace {

ExperimentReport lexicon_run(const Dataset& dataset, const Lexicon& lexicon,
                             const ScoreConfig& score, const std::string& name) {
    ExperimentReport report;
    report.experiment_name = name;
    report.config["documents"] = std::to_string(dataset.size());
    report.config["lexicon_entries"] = std::to_string(lexicon.entry_count());
    report.config["weights"] = score.use_weights ? "on" : "off";
    report.config["negation"] = score.negation_token ? "on" : "off";
    for (const Document& doc : dataset.documents) {
        Polarity predicted = classify_by_score(score_document(doc, lexicon, score));
        report.per_instance[doc.id] = {doc.label, predicted};
    }
    report.mean_accuracy = accuracy(report.per_instance);
    return report;
}

} // namespace

ExperimentReport score_lexicon(const std::filesystem::path& corpus_path,
                               const std::filesystem::path& lexicon_path,
                               const ScoreConfig& score) {
    Dataset dataset = load_corpus(corpus_path);
    Lexicon lexicon = parse_lexicon(lexicon_path);
    ExperimentReport report = lexicon_run(dataset, lexicon, score, "score-lexicon");
    report.config["corpus"] = corpus_path.string();
    report.config["lexicon"] = lexicon_path.string();
    return report;
}

namespace {

// A preset name or an explicit family/classifier pair, resolved.
struct ResolvedRun {
    std::string name;
    bool lexicon_based = false;
    ScoreConfig score;
    FeatureSpec features;
    ClassifierKind classifier = ClassifierKind::NaiveBayes;
};

ResolvedRun resolve(const ExperimentConfig& config) {
    if (!config.experiment.empty()) {
        if (!config.families.empty() || config.classifier) {
            throw ConfigError("give either --experiment or --families/--classifier, not both");
        }
        const Preset& preset = find_preset(config.experiment);
        ResolvedRun run;
        run.name = preset.name;
        run.lexicon_based = preset.kind == Preset::Kind::Lexicon;
        run.score = preset.score;
        run.features = preset.features;
        run.classifier = preset.classifier;
        return run;
    }
    if (config.families.empty() || !config.classifier) {
        throw ConfigError("an explicit run needs both --families and --classifier");
    }
    ResolvedRun run;
    run.classifier = classifier_from_name(*config.classifier);
    int default_cap = run.classifier == ClassifierKind::MaxEnt ? 5000 : 10000;
    run.features = feature_spec_from_names(config.families, default_cap);
    run.name = "custom-" + *config.classifier;
    return run;
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    ResolvedRun resolved = resolve(config);
    Dataset dataset = load_corpus(config.corpus_path);

    ExperimentReport report;
    report.experiment_name = resolved.name;
    report.config["corpus"] = config.corpus_path.string();
    report.config["documents"] = std::to_string(dataset.size());

    if (resolved.lexicon_based) {
        if (!config.lexicon_path) {
            throw ConfigError("preset '" + resolved.name + "' needs --lexicon");
        }
        Lexicon lexicon = parse_lexicon(*config.lexicon_path);
        ExperimentReport scored = lexicon_run(dataset, lexicon, resolved.score, resolved.name);
        scored.config["corpus"] = config.corpus_path.string();
        scored.config["lexicon"] = config.lexicon_path->string();
        return scored;
    }

    FeatureSpec features = resolved.features;
    if (config.max_features) {
        if (*config.max_features <= 0) throw ConfigError("--max-features must be positive");
        features.max_features = *config.max_features;
    }

    std::optional<Lexicon> lexicon;
    if (features.needs_lexicon()) {
        if (!config.lexicon_path) {
            throw ConfigError("experiment '" + resolved.name + "' needs --lexicon");
        }
        lexicon = parse_lexicon(*config.lexicon_path);
        report.config["lexicon"] = config.lexicon_path->string();
    }
    std::optional<std::map<int, AnnotatedDocument>> annotations;
    if (features.needs_annotations()) {
        if (!config.annotations_path) {
            throw ConfigError("experiment '" + resolved.name + "' needs --annotations");
        }
        annotations = align(dataset, *config.annotations_path);
        report.config["annotations"] = config.annotations_path->string();
    }

    FoldPlan plan = make_folds(dataset, config.k, config.seed);
    ClassifierSpec classifier{resolved.classifier, config.train};

    report.config["classifier"] = to_string(resolved.classifier);
    report.config["families"] = family_list(features);
    report.config["max_features"] = std::to_string(features.max_features);
    report.config["k"] = std::to_string(config.k);
    report.config["seed"] = std::to_string(config.seed);
    switch (resolved.classifier) {
        case ClassifierKind::NaiveBayes:
            report.config["nb_smoothing"] = compact_number(config.train.nb_smoothing);
            break;
        case ClassifierKind::MaxEnt:
            report.config["maxent_l2"] = compact_number(config.train.maxent_l2);
            report.config["maxent_tol"] = compact_number(config.train.maxent_tol);
            break;
        case ClassifierKind::Svm:
            report.config["svm_c"] = compact_number(config.train.svm_c);
            report.config["svm_tol"] = compact_number(config.train.svm_tol);
            break;
    }

    ExperimentReport cv =
        cross_validate(dataset, features, classifier, plan, lexicon ? &*lexicon : nullptr,
                       annotations ? &*annotations : nullptr);
    report.per_fold_accuracy = std::move(cv.per_fold_accuracy);
    report.mean_accuracy = cv.mean_accuracy;
    report.per_instance = std::move(cv.per_instance);
    return report;
}

namespace {

// Paired significance between two runs: per-fold accuracies and
// per-instance 0/1 correctness, both reported.
SignificanceEntry significance_between(const std::string& name_a,
                                       const std::vector<double>& folds_a,
                                       const std::map<int, PredictionRecord>& inst_a,
                                       const std::string& name_b,
                                       const std::vector<double>& folds_b,
                                       const std::map<int, PredictionRecord>& inst_b) {
    SignificanceEntry entry;
    entry.system_a = name_a;
    entry.system_b = name_b;
    entry.by_fold = wilcoxon_signed_rank(folds_a, folds_b);
    std::vector<double> correct_a, correct_b;
    correct_a.reserve(inst_a.size());
    for (const auto& [doc_id, record] : inst_a) {
        auto it = inst_b.find(doc_id);
        if (it == inst_b.end()) throw InputError("significance: doc_id sets differ");
        correct_a.push_back(record.gold == record.predicted ? 1.0 : 0.0);
        correct_b.push_back(it->second.gold == it->second.predicted ? 1.0 : 0.0);
    }
    entry.by_instance = wilcoxon_signed_rank(correct_a, correct_b);
    return entry;
}

} // namespace

SweepReport sweep_features(const ExperimentConfig& config, const std::vector<int>& counts) {
    if (counts.empty()) throw ConfigError("sweep needs at least one feature count");
    ResolvedRun resolved = resolve(config);
    if (resolved.lexicon_based) {
        throw ConfigError("sweep applies to cross-validated experiments only");
    }

    SweepReport sweep;
    sweep.experiment_name = resolved.name;
    sweep.config["experiment"] = resolved.name;
    sweep.config["k"] = std::to_string(config.k);
    sweep.config["seed"] = std::to_string(config.seed);

    std::vector<ExperimentReport> reports;
    for (int count : counts) {
        ExperimentConfig at_count = config;
        at_count.max_features = count;
        ExperimentReport report = run_experiment(at_count);
        sweep.runs.push_back({count, report.per_fold_accuracy, report.mean_accuracy});
        reports.push_back(std::move(report));
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
        for (std::size_t j = i + 1; j < reports.size(); ++j) {
            std::string name_i = resolved.name + "@" + std::to_string(counts[i]);
            std::string name_j = resolved.name + "@" + std::to_string(counts[j]);
            sweep.significance.push_back(significance_between(
                name_i, reports[i].per_fold_accuracy, reports[i].per_instance, name_j,
                reports[j].per_fold_accuracy, reports[j].per_instance));
        }
    }
    return sweep;
}

ExperimentReport combo_reports(const std::vector<ExperimentReport>& reports) {
    if (reports.empty()) throw InputError("combo needs at least one report");
    const auto& base = reports.front().per_instance;
    if (base.empty()) throw InputError("combo: first report has no per-instance table");

    std::vector<int> doc_ids;
    doc_ids.reserve(base.size());
    for (const auto& [doc_id, record] : base) doc_ids.push_back(doc_id);

    std::vector<std::vector<Polarity>> votes;
    votes.reserve(reports.size());
    for (const ExperimentReport& report : reports) {
        if (report.per_instance.size() != base.size()) {
            throw InputError("combo: report '" + report.experiment_name +
                             "' covers a different document set");
        }
        std::vector<Polarity> row;
        row.reserve(doc_ids.size());
        for (int doc_id : doc_ids) {
            auto it = report.per_instance.find(doc_id);
            if (it == report.per_instance.end()) {
                throw InputError("combo: report '" + report.experiment_name +
                                 "' is missing doc_id " + std::to_string(doc_id));
            }
            if (it->second.gold != base.at(doc_id).gold) {
                throw InputError("combo: gold labels disagree at doc_id " + std::to_string(doc_id));
            }
            row.push_back(it->second.predicted);
        }
        votes.push_back(std::move(row));
    }

    std::vector<Polarity> decided = ensemble_mode(votes);
    ExperimentReport out;
    out.experiment_name = "combo";
    out.config["systems"] = std::to_string(reports.size());
    for (std::size_t i = 0; i < doc_ids.size(); ++i) {
        out.per_instance[doc_ids[i]] = {base.at(doc_ids[i]).gold, decided[i]};
    }
    out.mean_accuracy = accuracy(out.per_instance);
    return out;
}

ExperimentReport combo(const std::vector<std::filesystem::path>& report_paths) {
    std::vector<ExperimentReport> reports;
    reports.reserve(report_paths.size());
    for (const auto& path : report_paths) reports.push_back(read_report(path));
    return combo_reports(reports);
}

} // namespace sentibench
