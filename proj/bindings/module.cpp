#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sentibench/annotations.hpp"
#include "sentibench/classifiers.hpp"
#include "sentibench/corpus.hpp"
#include "sentibench/errors.hpp"
#include "sentibench/evaluation.hpp"
#include "sentibench/experiments.hpp"
#include "sentibench/features.hpp"
#include "sentibench/lexicon.hpp"

namespace py = pybind11;
using namespace sentibench;

PYBIND11_MODULE(_core, m) {
    m.doc() = "sentiment classification workbench core";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DataError>(m, "DataError");
    py::register_exception<TrainError>(m, "TrainError");

    py::enum_<Polarity>(m, "Polarity")
        .value("Negative", Polarity::Negative)
        .value("Positive", Polarity::Positive);

    py::enum_<CoarseTag>(m, "CoarseTag")
        .value("Adj", CoarseTag::Adj)
        .value("Noun", CoarseTag::Noun)
        .value("Verb", CoarseTag::Verb)
        .value("Adv", CoarseTag::Adv)
        .value("Other", CoarseTag::Other);

    py::class_<Document>(m, "Document")
        .def(py::init<>())
        .def_readwrite("id", &Document::id)
        .def_readwrite("source_name", &Document::source_name)
        .def_readwrite("tokens", &Document::tokens)
        .def_readwrite("label", &Document::label);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("documents", &Dataset::documents)
        .def("__len__", &Dataset::size)
        .def("count", &Dataset::count);

    m.def("tokenize", [](const std::string& text) { return tokenize(text); });
    m.def("load_corpus", &load_corpus, py::arg("root"));

    // annotations
    py::class_<TokenAnnotation>(m, "TokenAnnotation")
        .def(py::init<>())
        .def_readwrite("form", &TokenAnnotation::form)
        .def_readwrite("pos", &TokenAnnotation::pos)
        .def_readwrite("head", &TokenAnnotation::head)
        .def_readwrite("deprel", &TokenAnnotation::deprel);

    py::class_<AnnotatedDocument>(m, "AnnotatedDocument")
        .def(py::init<>())
        .def_readwrite("doc_id", &AnnotatedDocument::doc_id)
        .def_readwrite("sentences", &AnnotatedDocument::sentences);

    m.def("load_annotations", &load_annotations, py::arg("path"));
    m.def("align", &align, py::arg("dataset"), py::arg("annotation_dir"));

    // lexicon
    py::class_<ScoreConfig>(m, "ScoreConfig")
        .def(py::init<>())
        .def_readwrite("use_weights", &ScoreConfig::use_weights)
        .def_readwrite("strong_points", &ScoreConfig::strong_points)
        .def_readwrite("weak_points", &ScoreConfig::weak_points)
        .def_readwrite("negation_token", &ScoreConfig::negation_token);

    py::class_<Lexicon>(m, "Lexicon")
        .def("entry_count", &Lexicon::entry_count)
        .def("unique_word_count", &Lexicon::unique_word_count)
        .def("skipped_records", &Lexicon::skipped_records);

    m.def("parse_lexicon", &parse_lexicon, py::arg("path"));
    m.def("score_document", &score_document, py::arg("doc"), py::arg("lexicon"), py::arg("config"));
    m.def("classify_by_score", &classify_by_score, py::arg("score"));

    // features
    py::class_<FeatureSpec>(m, "FeatureSpec")
        .def(py::init([](const std::vector<std::string>& families, int max_features) {
                 return feature_spec_from_names(families, max_features);
             }),
             py::arg("families"), py::arg("max_features") = 10000)
        .def_readwrite("max_features", &FeatureSpec::max_features);

    py::class_<Vocabulary>(m, "Vocabulary")
        .def("__len__", &Vocabulary::size)
        .def("features", &Vocabulary::features)
        .def("lookup", &Vocabulary::lookup);

    py::class_<FeatureVector>(m, "FeatureVector")
        .def(py::init<>())
        .def(py::init([](int doc_id, std::vector<int> on) {
                 return FeatureVector{doc_id, std::move(on)};
             }),
             py::arg("doc_id"), py::arg("on_indices"))
        .def_readwrite("doc_id", &FeatureVector::doc_id)
        .def_readwrite("on_indices", &FeatureVector::on_indices);

    m.def("extract_ngrams", &extract_ngrams, py::arg("tokens"), py::arg("n"));
    m.def("extract_word_pos", &extract_word_pos);
    m.def("extract_word_and_word_pos", &extract_word_and_word_pos);
    m.def("extract_pos_filtered", &extract_pos_filtered, py::arg("annotated"), py::arg("tags"));
    m.def("extract_dependency_pairs", &extract_dependency_pairs);
    m.def(
        "build_vocabulary",
        [](const std::vector<std::vector<std::string>>& docs, const FeatureSpec& spec,
           const Lexicon* lexicon) { return build_vocabulary(docs, spec, lexicon); },
        py::arg("train_doc_features"), py::arg("spec"), py::arg("lexicon") = nullptr);
    m.def("vectorize", &vectorize, py::arg("doc_features"), py::arg("vocab"),
          py::arg("doc_id") = -1);

    // classifiers
    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("nb_smoothing", &TrainConfig::nb_smoothing)
        .def_readwrite("maxent_l2", &TrainConfig::maxent_l2)
        .def_readwrite("maxent_tol", &TrainConfig::maxent_tol)
        .def_readwrite("maxent_max_iters", &TrainConfig::maxent_max_iters)
        .def_readwrite("svm_c", &TrainConfig::svm_c)
        .def_readwrite("svm_tol", &TrainConfig::svm_tol)
        .def_readwrite("svm_eps", &TrainConfig::svm_eps)
        .def_readwrite("svm_max_passes", &TrainConfig::svm_max_passes);

    py::class_<LabeledVector>(m, "LabeledVector")
        .def(py::init<>())
        .def(py::init([](FeatureVector vec, Polarity label) {
                 return LabeledVector{std::move(vec), label};
             }),
             py::arg("vec"), py::arg("label"))
        .def_readwrite("vec", &LabeledVector::vec)
        .def_readwrite("label", &LabeledVector::label);

    py::class_<NBModel>(m, "NBModel")
        .def_readonly("vocab_size", &NBModel::vocab_size)
        .def_readonly("log_prior", &NBModel::log_prior);

    py::class_<LinearModel>(m, "LinearModel")
        .def_readonly("w", &LinearModel::w)
        .def_readonly("b", &LinearModel::b);

    m.def("nb_train", &nb_train, py::arg("data"), py::arg("dim"),
          py::arg("config") = TrainConfig{});
    m.def("nb_posteriors", &nb_posteriors, py::arg("model"), py::arg("vec"));
    m.def("nb_predict", &nb_predict, py::arg("model"), py::arg("vec"));
    m.def("maxent_train", &maxent_train, py::arg("data"), py::arg("dim"),
          py::arg("config") = TrainConfig{});
    m.def("predict_proba", &predict_proba, py::arg("model"), py::arg("vec"));
    m.def("maxent_predict", &maxent_predict, py::arg("model"), py::arg("vec"));
    m.def("svm_train", &svm_train, py::arg("data"), py::arg("dim"),
          py::arg("config") = TrainConfig{});
    m.def("svm_predict", &svm_predict, py::arg("model"), py::arg("vec"));

    // evaluation
    py::class_<FoldPlan>(m, "FoldPlan")
        .def_readonly("k", &FoldPlan::k)
        .def_readonly("seed", &FoldPlan::seed)
        .def_readonly("assignment", &FoldPlan::assignment);

    py::class_<WilcoxonResult>(m, "WilcoxonResult")
        .def_readonly("n_effective", &WilcoxonResult::n_effective)
        .def_readonly("w_statistic", &WilcoxonResult::w_statistic)
        .def_readonly("p_two_sided", &WilcoxonResult::p_two_sided)
        .def_property_readonly("method",
                               [](const WilcoxonResult& r) { return std::string(to_string(r.method)); });

    py::class_<PredictionRecord>(m, "PredictionRecord")
        .def_readonly("gold", &PredictionRecord::gold)
        .def_readonly("predicted", &PredictionRecord::predicted);

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("experiment_name", &ExperimentReport::experiment_name)
        .def_readonly("per_fold_accuracy", &ExperimentReport::per_fold_accuracy)
        .def_readonly("mean_accuracy", &ExperimentReport::mean_accuracy)
        .def_readonly("per_instance", &ExperimentReport::per_instance)
        .def_readonly("config", &ExperimentReport::config)
        .def("to_json", [](const ExperimentReport& r) { return report_to_json(r); });

    m.def("make_folds", &make_folds, py::arg("dataset"), py::arg("k"), py::arg("seed"));
    m.def("accuracy", &accuracy, py::arg("per_instance"));
    m.def("wilcoxon_signed_rank", &wilcoxon_signed_rank, py::arg("a"), py::arg("b"));
    m.def("ensemble_mode", &ensemble_mode, py::arg("predictions"));
    m.def(
        "cross_validate",
        [](const Dataset& dataset, const FeatureSpec& features, const std::string& classifier,
           const FoldPlan& plan, const Lexicon* lexicon,
           const std::optional<std::map<int, AnnotatedDocument>>& annotations,
           const TrainConfig& train) {
            ClassifierSpec spec{classifier_from_name(classifier), train};
            return cross_validate(dataset, features, spec, plan, lexicon,
                                  annotations ? &*annotations : nullptr);
        },
        py::arg("dataset"), py::arg("features"), py::arg("classifier"), py::arg("plan"),
        py::arg("lexicon") = nullptr, py::arg("annotations") = py::none(),
        py::arg("train") = TrainConfig{});

    // experiments
    m.def("preset_names", [] {
        std::vector<std::string> names;
        for (const Preset& p : preset_table()) names.push_back(p.name);
        return names;
    });
    m.def(
        "run_experiment",
        [](const std::string& corpus, const std::string& experiment, const std::string& lexicon,
           const std::string& annotations, int k, std::uint64_t seed, int max_features) {
            ExperimentConfig config;
            config.corpus_path = corpus;
            config.experiment = experiment;
            if (!lexicon.empty()) config.lexicon_path = lexicon;
            if (!annotations.empty()) config.annotations_path = annotations;
            config.k = k;
            config.seed = seed;
            if (max_features != 0) config.max_features = max_features;
            return run_experiment(config);
        },
        py::arg("corpus"), py::arg("experiment"), py::arg("lexicon") = "",
        py::arg("annotations") = "", py::arg("k") = 3, py::arg("seed") = 42,
        py::arg("max_features") = 0);
    m.def("score_lexicon", &score_lexicon, py::arg("corpus"), py::arg("lexicon"),
          py::arg("config"));
    m.def("combo_reports", &combo_reports, py::arg("reports"));
    m.def("read_report", &read_report, py::arg("path"));
    m.def("write_report", &write_report, py::arg("report"), py::arg("path"));
}
