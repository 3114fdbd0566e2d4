#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sentibench/errors.hpp"
#include "sentibench/experiments.hpp"

namespace {

using namespace sentibench;

void print_summary(const ExperimentReport& report) {
    std::printf("experiment: %s\n", report.experiment_name.c_str());
    if (!report.per_fold_accuracy.empty()) {
        std::printf("fold accuracies:");
        for (double a : report.per_fold_accuracy) std::printf(" %.4f", a);
        std::printf("\n");
    }
    std::printf("accuracy: %.4f (%.2f%%) over %zu documents\n", report.mean_accuracy,
                100.0 * report.mean_accuracy, report.per_instance.size());
}

void maybe_write(const ExperimentReport& report, const std::string& out_path) {
    if (out_path.empty()) return;
    write_report(report, out_path);
    std::printf("report written to %s\n", out_path.c_str());
}

struct CommonFlags {
    std::string corpus;
    std::string lexicon;
    std::string annotations;
    std::string experiment;
    std::vector<std::string> families;
    std::string classifier;
    std::string out;
    int folds = 3;
    std::uint64_t seed = 42;
    int max_features = 0; // 0 = preset default
    TrainConfig train;
};

ExperimentConfig to_config(const CommonFlags& flags) {
    ExperimentConfig config;
    config.corpus_path = flags.corpus;
    if (!flags.lexicon.empty()) config.lexicon_path = flags.lexicon;
    if (!flags.annotations.empty()) config.annotations_path = flags.annotations;
    config.experiment = flags.experiment;
    config.families = flags.families;
    if (!flags.classifier.empty()) config.classifier = flags.classifier;
    config.k = flags.folds;
    config.seed = flags.seed;
    if (flags.max_features != 0) config.max_features = flags.max_features;
    config.train = flags.train;
    return config;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_experiment) {
    cmd->add_option("--corpus", flags.corpus, "corpus root with pos/ and neg/ subdirectories")
        ->required();
    cmd->add_option("--lexicon", flags.lexicon, "sentiment lexicon file");
    cmd->add_option("--annotations", flags.annotations, "directory of <stem>.dep files");
    if (with_experiment) {
        cmd->add_option("--experiment", flags.experiment,
                        "experiment preset name (see the preset table)");
        cmd->add_option("--families", flags.families,
                        "explicit feature families, e.g. unigram,bigram,pos-only:adj")
            ->delimiter(',');
        cmd->add_option("--classifier", flags.classifier, "explicit classifier: nb|maxent|svm")
            ->check(CLI::IsMember({"nb", "maxent", "svm"}));
    }
    cmd->add_option("--folds", flags.folds, "number of cross-validation folds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", flags.seed, "fold-assignment seed");
    cmd->add_option("--max-features", flags.max_features, "vocabulary cap override")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", flags.out, "write the full report to this path");
    // classifier hyperparameters
    cmd->add_option("--nb-smoothing", flags.train.nb_smoothing, "add-alpha smoothing mass")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--maxent-l2", flags.train.maxent_l2, "maxent L2 penalty")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--maxent-tol", flags.train.maxent_tol, "maxent gradient tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--maxent-max-iters", flags.train.maxent_max_iters,
                    "maxent iteration budget")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--svm-c", flags.train.svm_c, "svm soft-margin C")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--svm-tol", flags.train.svm_tol, "svm KKT tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--svm-max-passes", flags.train.svm_max_passes,
                    "stale full sweeps before a convergence error")
        ->check(CLI::PositiveNumber);
}

int dispatch(int argc, char** argv) {
    CLI::App app{"sentiment classification workbench"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "run one named experiment");
    add_common_flags(run_cmd, run_flags, true);

    CommonFlags sweep_flags;
    std::vector<int> sweep_counts;
    std::string sweep_out;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep-features", "run one experiment at several vocabulary caps");
    add_common_flags(sweep_cmd, sweep_flags, true);
    sweep_cmd->add_option("--counts", sweep_counts, "feature counts, e.g. 5000 10000 20000")
        ->required()
        ->delimiter(',');

    std::vector<std::string> combo_paths;
    std::string combo_out;
    CLI::App* combo_cmd =
        app.add_subcommand("combo", "mode-vote ensemble over previously written reports");
    combo_cmd->add_option("reports", combo_paths, "report files from prior runs")->required();
    combo_cmd->add_option("--out", combo_out, "write the ensemble report to this path");

    CommonFlags score_flags;
    std::string weights = "off";
    std::string negation = "off";
    CLI::App* score_cmd =
        app.add_subcommand("score-lexicon", "rule-based lexicon scoring over the corpus");
    add_common_flags(score_cmd, score_flags, false);
    score_cmd->add_option("--weights", weights, "use strong/weak weights: on|off")
        ->check(CLI::IsMember({"on", "off"}));
    score_cmd->add_option("--negation", negation, "count n't as a strong negative: on|off")
        ->check(CLI::IsMember({"on", "off"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage errors are exit code 1, whatever CLI11 prefers
    }

    if (run_cmd->parsed()) {
        ExperimentReport report = run_experiment(to_config(run_flags));
        print_summary(report);
        maybe_write(report, run_flags.out);
        return 0;
    }
    if (sweep_cmd->parsed()) {
        SweepReport sweep = sweep_features(to_config(sweep_flags), sweep_counts);
        std::printf("experiment: %s\n", sweep.experiment_name.c_str());
        for (const SweepRun& run : sweep.runs) {
            std::printf("max_features %6d: accuracy %.4f (%.2f%%)\n", run.max_features,
                        run.mean_accuracy, 100.0 * run.mean_accuracy);
        }
        for (const SignificanceEntry& e : sweep.significance) {
            std::printf("%s vs %s: p(by fold) = %.4f, p(by instance) = %.4f\n",
                        e.system_a.c_str(), e.system_b.c_str(), e.by_fold.p_two_sided,
                        e.by_instance.p_two_sided);
        }
        if (!sweep_flags.out.empty()) {
            write_sweep(sweep, sweep_flags.out);
            std::printf("sweep report written to %s\n", sweep_flags.out.c_str());
        }
        return 0;
    }
    if (combo_cmd->parsed()) {
        std::vector<std::filesystem::path> paths(combo_paths.begin(), combo_paths.end());
        ExperimentReport report = combo(paths);
        print_summary(report);
        maybe_write(report, combo_out);
        return 0;
    }
    if (score_cmd->parsed()) {
        if (score_flags.lexicon.empty()) throw ConfigError("score-lexicon needs --lexicon");
        ScoreConfig score;
        score.use_weights = weights == "on";
        if (negation == "on") score.negation_token = "n't";
        ExperimentReport report =
            score_lexicon(score_flags.corpus, score_flags.lexicon, score);
        print_summary(report);
        maybe_write(report, score_flags.out);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const TrainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
