#include <algorithm>
#include <numeric>

#include "sentibench/errors.hpp"
#include "sentibench/evaluation.hpp"
#include "sentibench/rng.hpp"

namespace sentibench {

const char* to_string(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::NaiveBayes: return "nb";
        case ClassifierKind::MaxEnt: return "maxent";
        case ClassifierKind::Svm: return "svm";
    }
    return "?";
}

ClassifierKind classifier_from_name(const std::string& name) {
    if (name == "nb") return ClassifierKind::NaiveBayes;
    if (name == "maxent") return ClassifierKind::MaxEnt;
    if (name == "svm") return ClassifierKind::Svm;
    throw ConfigError("unknown classifier '" + name + "' (expected nb, maxent or svm)");
}

FoldPlan make_folds(const Dataset& dataset, int k, std::uint64_t seed) {
    if (k < 2) throw FoldError("k must be at least 2, got " + std::to_string(k));
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignment.assign(dataset.size(), -1);

    SplitMix64 rng(seed);
    int class_index = 0;
    for (Polarity label : {Polarity::Negative, Polarity::Positive}) {
        std::vector<int> ids;
        for (const Document& doc : dataset.documents) {
            if (doc.label == label) ids.push_back(doc.id);
        }
        if (static_cast<int>(ids.size()) < k) {
            throw FoldError(std::string("class ") + to_string(label) + " has " +
                            std::to_string(ids.size()) + " documents, fewer than k = " +
                            std::to_string(k));
        }
        std::sort(ids.begin(), ids.end());
        fisher_yates(ids, rng);
        // round-robin with a per-class starting offset keeps overall fold
        // sizes within one of each other as well
        for (std::size_t i = 0; i < ids.size(); ++i) {
            plan.assignment[ids[i]] = static_cast<int>((i + class_index) % k);
        }
        ++class_index;
    }
    return plan;
}

double accuracy(const std::map<int, PredictionRecord>& per_instance) {
    if (per_instance.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto& [doc_id, record] : per_instance) {
        if (record.gold == record.predicted) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(per_instance.size());
}

std::vector<Polarity> ensemble_mode(const std::vector<std::vector<Polarity>>& predictions) {
    if (predictions.empty()) throw InputError("ensemble: no systems");
    const std::size_t n = predictions.front().size();
    for (const auto& row : predictions) {
        if (row.size() != n) throw InputError("ensemble: systems disagree on instance count");
    }
    std::vector<Polarity> result(n, Polarity::Negative);
    for (std::size_t i = 0; i < n; ++i) {
        int positive_votes = 0;
        for (const auto& row : predictions) {
            if (row[i] == Polarity::Positive) ++positive_votes;
        }
        int negative_votes = static_cast<int>(predictions.size()) - positive_votes;
        result[i] = positive_votes > negative_votes ? Polarity::Positive : Polarity::Negative;
    }
    return result;
}

namespace {

std::pair<Polarity, double> predict_one(const ClassifierSpec& spec, const NBModel* nb,
                                        const LinearModel* linear, const FeatureVector& vec) {
    switch (spec.kind) {
        case ClassifierKind::NaiveBayes: return nb_predict(*nb, vec);
        case ClassifierKind::MaxEnt: return maxent_predict(*linear, vec);
        case ClassifierKind::Svm: return svm_predict(*linear, vec);
    }
    throw ConfigError("unknown classifier kind");
}

} // namespace

ExperimentReport cross_validate(const Dataset& dataset, const FeatureSpec& feature_spec,
                                const ClassifierSpec& classifier_spec, const FoldPlan& plan,
                                const Lexicon* lexicon,
                                const std::map<int, AnnotatedDocument>* annotations) {
    if (plan.assignment.size() != dataset.size()) {
        throw FoldError("fold plan covers " + std::to_string(plan.assignment.size()) +
                        " documents, dataset has " + std::to_string(dataset.size()));
    }
    if (feature_spec.needs_annotations() && annotations == nullptr) {
        throw ConfigError("selected feature families need annotations");
    }
    if (feature_spec.needs_lexicon() && lexicon == nullptr) {
        throw ConfigError("lexicon-words family needs a lexicon");
    }

    // extraction does not depend on the fold split, so do it once
    std::vector<std::vector<std::string>> features_by_doc(dataset.size());
    for (const Document& doc : dataset.documents) {
        const AnnotatedDocument* annotated = nullptr;
        if (annotations != nullptr) {
            auto it = annotations->find(doc.id);
            if (it == annotations->end() && feature_spec.needs_annotations()) {
                throw AlignmentError("no annotations for document id " + std::to_string(doc.id));
            }
            if (it != annotations->end()) annotated = &it->second;
        }
        features_by_doc[doc.id] = document_features(doc, annotated, feature_spec);
    }

    ExperimentReport report;
    for (int fold = 0; fold < plan.k; ++fold) {
        try {
            std::vector<std::vector<std::string>> train_features;
            std::vector<const Document*> train_docs, test_docs;
            for (const Document& doc : dataset.documents) {
                if (plan.assignment[doc.id] == fold) {
                    test_docs.push_back(&doc);
                } else {
                    train_docs.push_back(&doc);
                    train_features.push_back(features_by_doc[doc.id]);
                }
            }
            Vocabulary vocab = build_vocabulary(train_features, feature_spec, lexicon);
            const int dim = static_cast<int>(vocab.size());

            std::vector<LabeledVector> train;
            train.reserve(train_docs.size());
            for (const Document* doc : train_docs) {
                train.push_back({vectorize(features_by_doc[doc->id], vocab, doc->id), doc->label});
            }

            NBModel nb;
            LinearModel linear;
            switch (classifier_spec.kind) {
                case ClassifierKind::NaiveBayes:
                    nb = nb_train(train, dim, classifier_spec.train);
                    break;
                case ClassifierKind::MaxEnt:
                    linear = maxent_train(train, dim, classifier_spec.train);
                    break;
                case ClassifierKind::Svm:
                    linear = svm_train(train, dim, classifier_spec.train);
                    break;
            }

            std::size_t correct = 0;
            for (const Document* doc : test_docs) {
                FeatureVector vec = vectorize(features_by_doc[doc->id], vocab, doc->id);
                auto [label, score] = predict_one(classifier_spec, &nb, &linear, vec);
                report.per_instance[doc->id] = {doc->label, label};
                if (label == doc->label) ++correct;
            }
            report.per_fold_accuracy.push_back(
                test_docs.empty() ? 0.0 : static_cast<double>(correct) / test_docs.size());
        } catch (const ConfigError&) {
            throw;
        } catch (const TrainError& e) {
            throw TrainError("fold " + std::to_string(fold) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError("fold " + std::to_string(fold) + ": " + e.what());
        }
    }
    report.mean_accuracy =
        std::accumulate(report.per_fold_accuracy.begin(), report.per_fold_accuracy.end(), 0.0) /
        static_cast<double>(report.per_fold_accuracy.size());
    return report;
}

} // namespace sentibench
