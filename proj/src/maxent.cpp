#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "sentibench/classifiers.hpp"
#include "sentibench/errors.hpp"

namespace sentibench {

namespace {

double logistic(double s) {
    if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
    double e = std::exp(s);
    return e / (1.0 + e);
}

// log(1 + exp(s)) without overflow
double log1pexp(double s) {
    if (s > 0) return s + std::log1p(std::exp(-s));
    return std::log1p(std::exp(s));
}

double dot_sparse(const std::vector<double>& w, const FeatureVector& vec) {
    double s = 0.0;
    for (int idx : vec.on_indices) s += w[idx];
    return s;
}

double max_norm(const std::vector<double>& v, double extra) {
    double m = std::abs(extra);
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

double maxent_objective_and_gradient(const std::vector<LabeledVector>& data, int dim,
                                     const std::vector<double>& w, double b, double l2,
                                     std::vector<double>& grad_w, double& grad_b) {
    grad_w.assign(dim, 0.0);
    grad_b = 0.0;
    double objective = 0.0;
    for (const LabeledVector& lv : data) {
        for (int idx : lv.vec.on_indices) {
            if (idx < 0 || idx >= dim) {
                throw DimensionError("feature index " + std::to_string(idx) +
                                     " outside vocabulary of size " + std::to_string(dim));
            }
        }
        double s = dot_sparse(w, lv.vec) + b;
        double y = lv.label == Polarity::Positive ? 1.0 : 0.0;
        objective += y * s - log1pexp(s);
        double residual = y - logistic(s);
        for (int idx : lv.vec.on_indices) grad_w[idx] += residual;
        grad_b += residual;
    }
    for (int f = 0; f < dim; ++f) {
        objective -= 0.5 * l2 * w[f] * w[f];
        grad_w[f] -= l2 * w[f];
    }
    return objective;
}

MaxEntFit maxent_fit(const std::vector<LabeledVector>& data, int dim, const TrainConfig& cfg) {
    if (!(cfg.maxent_tol > 0.0) || cfg.maxent_l2 < 0.0 || cfg.maxent_max_iters < 1) {
        throw ConfigError("maxent config requires tol > 0, l2 >= 0, max_iters >= 1");
    }
    bool has_pos = false, has_neg = false;
    for (const LabeledVector& lv : data) {
        (lv.label == Polarity::Positive ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw TrainingError("maxent needs both classes in the training data");
    }

    // L-BFGS (m = 10) on theta = [w; b], maximizing the penalized
    // conditional log-likelihood via Armijo backtracking.
    const int n_params = dim + 1;
    const std::size_t memory = 10;
    std::vector<double> w(dim, 0.0);
    double b = 0.0;

    std::vector<double> grad_w(dim);
    double grad_b = 0.0;
    double objective = maxent_objective_and_gradient(data, dim, w, b, cfg.maxent_l2, grad_w, grad_b);
    if (!std::isfinite(objective)) throw TrainingError("non-finite maxent objective");

    std::deque<std::vector<double>> s_hist, y_hist; // theta and gradient deltas
    std::deque<double> rho_hist;

    auto grad_at = [&](int i) { return i < dim ? grad_w[i] : grad_b; };

    MaxEntFit fit;
    fit.objective_history.push_back(objective);

    std::vector<double> direction(n_params), prev_grad(n_params);
    int iter = 0;
    while (iter < cfg.maxent_max_iters && max_norm(grad_w, grad_b) >= cfg.maxent_tol) {
        // two-loop recursion on the ascent direction
        for (int i = 0; i < n_params; ++i) direction[i] = grad_at(i);
        std::vector<double> alpha_coef(s_hist.size());
        for (int h = static_cast<int>(s_hist.size()) - 1; h >= 0; --h) {
            double a = 0.0;
            for (int i = 0; i < n_params; ++i) a += s_hist[h][i] * direction[i];
            a *= rho_hist[h];
            alpha_coef[h] = a;
            for (int i = 0; i < n_params; ++i) direction[i] -= a * y_hist[h][i];
        }
        if (!s_hist.empty()) {
            double sy = 0.0, yy = 0.0;
            const auto& s_last = s_hist.back();
            const auto& y_last = y_hist.back();
            for (int i = 0; i < n_params; ++i) {
                sy += s_last[i] * y_last[i];
                yy += y_last[i] * y_last[i];
            }
            if (yy > 0) {
                double scale = sy / yy;
                for (int i = 0; i < n_params; ++i) direction[i] *= scale;
            }
        }
        for (std::size_t h = 0; h < s_hist.size(); ++h) {
            double beta = 0.0;
            for (int i = 0; i < n_params; ++i) beta += y_hist[h][i] * direction[i];
            beta *= rho_hist[h];
            for (int i = 0; i < n_params; ++i) direction[i] += s_hist[h][i] * (alpha_coef[h] - beta);
        }

        double dir_dot_grad = 0.0;
        for (int i = 0; i < n_params; ++i) dir_dot_grad += direction[i] * grad_at(i);
        if (dir_dot_grad <= 0) { // not an ascent direction; fall back to the gradient
            for (int i = 0; i < n_params; ++i) direction[i] = grad_at(i);
            dir_dot_grad = 0.0;
            for (int i = 0; i < n_params; ++i) dir_dot_grad += direction[i] * direction[i];
            if (dir_dot_grad == 0.0) break;
        }

        for (int i = 0; i < n_params; ++i) prev_grad[i] = grad_at(i);

        // Armijo backtracking
        const double c1 = 1e-4;
        double step = 1.0;
        double objective_new = -std::numeric_limits<double>::infinity();
        std::vector<double> w_new(dim);
        double b_new = 0.0;
        bool accepted = false;
        for (int attempt = 0; attempt < 50; ++attempt) {
            for (int i = 0; i < dim; ++i) w_new[i] = w[i] + step * direction[i];
            b_new = b + step * direction[dim];
            objective_new =
                maxent_objective_and_gradient(data, dim, w_new, b_new, cfg.maxent_l2, grad_w, grad_b);
            if (!std::isfinite(objective_new)) throw TrainingError("non-finite maxent objective");
            if (objective_new >= objective + c1 * step * dir_dot_grad) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // no further progress at machine precision

        // curvature pair (skip when it would break positive definiteness)
        std::vector<double> s_vec(n_params), y_vec(n_params);
        double sy = 0.0;
        for (int i = 0; i < n_params; ++i) {
            double old = i < dim ? w[i] : b;
            double fresh = i < dim ? w_new[i] : b_new;
            s_vec[i] = fresh - old;
            y_vec[i] = prev_grad[i] - grad_at(i); // delta of the negated-objective gradient
            sy += s_vec[i] * y_vec[i];
        }
        if (sy > 1e-12) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        w.swap(w_new);
        b = b_new;
        objective = objective_new;
        fit.objective_history.push_back(objective);
        ++iter;
    }

    // grad_w may hold a rejected trial's gradient; re-evaluate at the result
    maxent_objective_and_gradient(data, dim, w, b, cfg.maxent_l2, grad_w, grad_b);
    fit.model.w = std::move(w);
    fit.model.b = b;
    fit.model.kind = LinearKind::MaxEnt;
    fit.grad_max_norm = max_norm(grad_w, grad_b);
    fit.iterations = iter;
    return fit;
}

LinearModel maxent_train(const std::vector<LabeledVector>& data, int dim, const TrainConfig& cfg) {
    return maxent_fit(data, dim, cfg).model;
}

double predict_proba(const LinearModel& model, const FeatureVector& vec) {
    double s = model.b;
    for (int idx : vec.on_indices) {
        if (idx < 0 || idx >= static_cast<int>(model.w.size())) {
            throw DimensionError("feature index " + std::to_string(idx) +
                                 " outside vocabulary of size " + std::to_string(model.w.size()));
        }
        s += model.w[idx];
    }
    return logistic(s);
}

std::pair<Polarity, double> maxent_predict(const LinearModel& model, const FeatureVector& vec) {
    double p = predict_proba(model, vec);
    return {p > 0.5 ? Polarity::Positive : Polarity::Negative, p};
}

} // namespace sentibench
