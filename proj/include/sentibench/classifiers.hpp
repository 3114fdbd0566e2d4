#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <variant>
#include <vector>

#include "sentibench/corpus.hpp"
#include "sentibench/features.hpp"

namespace sentibench {

struct LabeledVector {
    FeatureVector vec;
    Polarity label = Polarity::Negative;
};

struct TrainConfig {
    double nb_smoothing = 1.0;

    double maxent_l2 = 0.1;
    double maxent_tol = 1e-6;
    int maxent_max_iters = 500;

    double svm_c = 1.0;
    double svm_tol = 1e-3;
    double svm_eps = 1e-12;
    int svm_max_passes = 10;
};

// Bernoulli Naive Bayes over binary presence vectors. Absent features
// contribute their complement likelihoods, so both states are modeled.
// Class index 0 = Negative, 1 = Positive, here and in log_prior.
struct NBModel {
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> log_on;  // log P(feature on  | class)
    std::array<std::vector<double>, 2> log_off; // log P(feature off | class)
    int vocab_size = 0;
};

enum class LinearKind { MaxEnt, Svm };

// Shared by MaxEnt and SVM: score(x) = w.x + b.
struct LinearModel {
    std::vector<double> w;
    double b = 0.0;
    LinearKind kind = LinearKind::MaxEnt;
};

// --- Naive Bayes ---------------------------------------------------------

// Priors are class counts / L; per-feature Bernoulli likelihoods use
// add-alpha smoothing: (count(on, class) + a) / (class count + 2a).
// dim is the shared vocabulary size. Throws TrainingError when only one
// class is present.
NBModel nb_train(const std::vector<LabeledVector>& data, int dim, const TrainConfig& cfg);

// Posterior of each class given the vector, normalized over the two
// classes. Throws DimensionError on an index >= vocab_size.
std::array<double, 2> nb_posteriors(const NBModel& model, const FeatureVector& vec);

// Argmax class and its posterior; exact ties resolve to Negative.
std::pair<Polarity, double> nb_predict(const NBModel& model, const FeatureVector& vec);

// --- Maximum Entropy -----------------------------------------------------

// Penalized conditional log-likelihood and its gradient at (w, b):
//   sum_i log p(y_i | x_i) - l2/2 * |w|^2,  p(pos|x) = logistic(w.x + b).
// The L2 term penalizes feature weights only, not the bias. grad_w must
// have length dim. Exposed for the finite-difference checks.
double maxent_objective_and_gradient(const std::vector<LabeledVector>& data,
                                     int dim,
                                     const std::vector<double>& w,
                                     double b,
                                     double l2,
                                     std::vector<double>& grad_w,
                                     double& grad_b);

struct MaxEntFit {
    LinearModel model;
    std::vector<double> objective_history; // value after each accepted step
    double grad_max_norm = 0.0;
    int iterations = 0;
};

// Deterministic L-BFGS with Armijo backtracking from w = 0, b = 0.
// Stops when the gradient max-norm drops below maxent_tol or after
// maxent_max_iters accepted steps. Throws TrainingError on a single
// class or a non-finite objective.
MaxEntFit maxent_fit(const std::vector<LabeledVector>& data, int dim, const TrainConfig& cfg);

LinearModel maxent_train(const std::vector<LabeledVector>& data, int dim, const TrainConfig& cfg);

// logistic(w.x + b). The label is Positive iff the probability exceeds
// 0.5; exactly 0.5 is Negative.
double predict_proba(const LinearModel& model, const FeatureVector& vec);
std::pair<Polarity, double> maxent_predict(const LinearModel& model, const FeatureVector& vec);

// --- SVM (SMO) -----------------------------------------------------------

// Real-valued sparse row, used by the SMO core so that tests can feed
// non-binary points. indices strictly increasing.
struct SparseRow {
    std::vector<int> indices;
    std::vector<double> values;
};

SparseRow to_sparse_row(const FeatureVector& vec);

struct SmoSolution {
    std::vector<double> alpha;
    std::vector<double> w;
    double b = 0.0;
    int sweeps = 0;                    // full or non-bound sweeps performed
    std::vector<double> dual_by_sweep; // dual objective after each sweep
};

// Platt's sequential minimal optimization for the linear soft-margin
// dual. Pair selection is deterministic: examples are examined in index
// order, the second-choice heuristic maximizes |E1 - E2| (lowest index
// on ties), and the fallback scans start at index 0. Labels y in {-1,+1}.
// Throws ConvergenceError after cfg.svm_max_passes consecutive full
// sweeps that change nothing while KKT violations remain.
SmoSolution smo_solve(const std::vector<SparseRow>& rows,
                      const std::vector<int>& y,
                      int dim,
                      const TrainConfig& cfg);

// Positive label maps to +1, Negative to -1. Throws TrainingError when
// only one class is present.
LinearModel svm_train(const std::vector<LabeledVector>& data, int dim, const TrainConfig& cfg);

// sign(w.x + b); a zero margin is Negative. Returns the raw margin.
std::pair<Polarity, double> svm_predict(const LinearModel& model, const FeatureVector& vec);

// --- Model serialization ---------------------------------------------------

using Model = std::variant<NBModel, LinearModel>;

// Versioned text format ("sentibench-model v1"); doubles are written as
// hex floats so round-trips are lossless.
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

} // namespace sentibench
