#include <algorithm>
#include <cmath>

#include "sentibench/classifiers.hpp"
#include "sentibench/errors.hpp"

namespace sentibench {

namespace {

void check_indices(const FeatureVector& vec, int dim) {
    for (int idx : vec.on_indices) {
        if (idx < 0 || idx >= dim) {
            throw DimensionError("feature index " + std::to_string(idx) +
                                 " outside vocabulary of size " + std::to_string(dim));
        }
    }
}

} // namespace

NBModel nb_train(const std::vector<LabeledVector>& data, int dim, const TrainConfig& cfg) {
    if (!(cfg.nb_smoothing > 0.0)) throw ConfigError("nb smoothing must be positive");
    std::array<int, 2> class_count{};
    std::array<std::vector<int>, 2> on_count;
    on_count[0].assign(dim, 0);
    on_count[1].assign(dim, 0);
    for (const LabeledVector& lv : data) {
        check_indices(lv.vec, dim);
        int c = lv.label == Polarity::Positive ? 1 : 0;
        ++class_count[c];
        for (int idx : lv.vec.on_indices) ++on_count[c][idx];
    }
    if (class_count[0] == 0 || class_count[1] == 0) {
        throw TrainingError("naive bayes needs both classes in the training data");
    }

    const double alpha = cfg.nb_smoothing;
    const double total = class_count[0] + class_count[1];
    NBModel model;
    model.vocab_size = dim;
    for (int c = 0; c < 2; ++c) {
        model.log_prior[c] = std::log(class_count[c] / total);
        model.log_on[c].resize(dim);
        model.log_off[c].resize(dim);
        const double denom = class_count[c] + 2.0 * alpha;
        for (int f = 0; f < dim; ++f) {
            double p_on = (on_count[c][f] + alpha) / denom;
            model.log_on[c][f] = std::log(p_on);
            model.log_off[c][f] = std::log1p(-p_on);
        }
    }
    return model;
}

std::array<double, 2> nb_posteriors(const NBModel& model, const FeatureVector& vec) {
    check_indices(vec, model.vocab_size);
    std::array<double, 2> score{};
    for (int c = 0; c < 2; ++c) {
        // all-features-off sum first, then swap in the on-state terms
        double s = model.log_prior[c];
        for (int f = 0; f < model.vocab_size; ++f) s += model.log_off[c][f];
        for (int idx : vec.on_indices) s += model.log_on[c][idx] - model.log_off[c][idx];
        score[c] = s;
    }
    // normalizing over the two classes realizes the evidence term
    double m = std::max(score[0], score[1]);
    double z0 = std::exp(score[0] - m);
    double z1 = std::exp(score[1] - m);
    return {z0 / (z0 + z1), z1 / (z0 + z1)};
}

std::pair<Polarity, double> nb_predict(const NBModel& model, const FeatureVector& vec) {
    std::array<double, 2> posterior = nb_posteriors(model, vec);
    if (posterior[1] > posterior[0]) return {Polarity::Positive, posterior[1]};
    return {Polarity::Negative, posterior[0]};
}

} // namespace sentibench
