#include <algorithm>
#include <cmath>

#include "sentibench/classifiers.hpp"
#include "sentibench/errors.hpp"

namespace sentibench {

SparseRow to_sparse_row(const FeatureVector& vec) {
    SparseRow row;
    row.indices = vec.on_indices;
    row.values.assign(vec.on_indices.size(), 1.0);
    return row;
}

namespace {

double dot(const SparseRow& a, const SparseRow& b) {
    double s = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.indices.size() && j < b.indices.size()) {
        if (a.indices[i] == b.indices[j]) {
            s += a.values[i] * b.values[j];
            ++i;
            ++j;
        } else if (a.indices[i] < b.indices[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return s;
}

double dot_dense(const std::vector<double>& w, const SparseRow& row) {
    double s = 0.0;
    for (std::size_t i = 0; i < row.indices.size(); ++i) s += w[row.indices[i]] * row.values[i];
    return s;
}

void axpy(std::vector<double>& w, double coef, const SparseRow& row) {
    for (std::size_t i = 0; i < row.indices.size(); ++i) w[row.indices[i]] += coef * row.values[i];
}

// Platt's SMO specialized to the linear kernel: w is maintained
// incrementally, so errors are computed on demand in O(nnz).
class SmoSolver {
public:
    SmoSolver(const std::vector<SparseRow>& rows, const std::vector<int>& y, int dim,
              const TrainConfig& cfg)
        : rows_(rows), y_(y), cfg_(cfg), n_(static_cast<int>(rows.size())),
          alpha_(rows.size(), 0.0), w_(dim, 0.0), self_dot_(rows.size()),
          // clipping can leave an alpha an ulp away from a bound; such
          // values count as bound or the boundary KKT test never settles
          band_(std::min(1e-8, 0.5 * cfg.svm_c)) {
        for (int i = 0; i < n_; ++i) self_dot_[i] = dot(rows_[i], rows_[i]);
    }

    SmoSolution run() {
        SmoSolution out;
        bool examine_all = true;
        int stale_full_sweeps = 0;
        while (true) {
            int changed = 0;
            for (int i = 0; i < n_; ++i) {
                if (examine_all || is_unbound(i)) changed += examine(i);
            }
            out.sweeps += 1;
            out.dual_by_sweep.push_back(dual_objective());

            if (examine_all) {
                int violations = kkt_violation_count();
                if (changed == 0 && violations == 0) break; // converged
                if (changed == 0) {
                    if (++stale_full_sweeps >= cfg_.svm_max_passes) {
                        throw ConvergenceError(
                            "smo made no progress over " + std::to_string(stale_full_sweeps) +
                            " full sweeps with " + std::to_string(violations) +
                            " KKT violation(s) outstanding");
                    }
                    // stay in examine-all mode and retry
                } else {
                    stale_full_sweeps = 0;
                    examine_all = false;
                }
            } else if (changed == 0) {
                examine_all = true;
            }
        }
        out.alpha = alpha_;
        out.w = w_;
        out.b = b_;
        return out;
    }

private:
    bool at_lower(int i) const { return alpha_[i] <= band_; }
    bool at_upper(int i) const { return alpha_[i] >= cfg_.svm_c - band_; }
    bool is_unbound(int i) const { return !at_lower(i) && !at_upper(i); }

    double decision(int i) const { return dot_dense(w_, rows_[i]) + b_; }
    double error(int i) const { return decision(i) - y_[i]; }

    bool violates_kkt(int i) const {
        double r = error(i) * y_[i]; // y f(x) - 1
        return (r < -cfg_.svm_tol && !at_upper(i)) || (r > cfg_.svm_tol && !at_lower(i));
    }

    int kkt_violation_count() const {
        int count = 0;
        for (int i = 0; i < n_; ++i) count += violates_kkt(i) ? 1 : 0;
        return count;
    }

    // D(alpha) = sum(alpha) - 0.5 |w|^2 for the linear kernel
    double dual_objective() const {
        double sum_alpha = 0.0;
        for (double a : alpha_) sum_alpha += a;
        double w_norm2 = 0.0;
        for (double x : w_) w_norm2 += x * x;
        return sum_alpha - 0.5 * w_norm2;
    }

    int examine(int i2) {
        if (!violates_kkt(i2)) return 0;
        double e2 = error(i2);

        // second choice: the unbound example with the largest |e1 - e2|,
        // lowest index on ties
        int best = -1;
        double best_gap = -1.0;
        for (int i = 0; i < n_; ++i) {
            if (i == i2 || !is_unbound(i)) continue;
            double gap = std::abs(error(i) - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best >= 0 && take_step(best, i2, e2)) return 1;

        // fall back to sequential scans from index 0
        for (int i = 0; i < n_; ++i) {
            if (i == i2 || !is_unbound(i)) continue;
            if (take_step(i, i2, e2)) return 1;
        }
        for (int i = 0; i < n_; ++i) {
            if (i == i2 || is_unbound(i)) continue;
            if (take_step(i, i2, e2)) return 1;
        }
        return 0;
    }

    bool take_step(int i1, int i2, double e2) {
        if (i1 == i2) return false;
        double a1 = alpha_[i1], a2 = alpha_[i2];
        int y1 = y_[i1], y2 = y_[i2];
        double e1 = error(i1);
        double s = y1 * y2;

        double lo, hi;
        const double c = cfg_.svm_c;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(c, c + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - c);
            hi = std::min(c, a1 + a2);
        }
        if (lo >= hi) return false;

        double k11 = self_dot_[i1];
        double k22 = self_dot_[i2];
        double k12 = dot(rows_[i1], rows_[i2]);
        double eta = k11 + k22 - 2.0 * k12;

        double a2_new;
        if (eta > 0.0) {
            a2_new = a2 + y2 * (e1 - e2) / eta;
            a2_new = std::clamp(a2_new, lo, hi);
        } else {
            // evaluate the objective at both clip bounds, move to the lower one
            double f1 = y1 * (e1 - b_) - a1 * k11 - s * a2 * k12;
            double f2 = y2 * (e2 - b_) - s * a1 * k12 - a2 * k22;
            double l1 = a1 + s * (a2 - lo);
            double h1 = a1 + s * (a2 - hi);
            double lo_obj = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 +
                            s * lo * l1 * k12;
            double hi_obj = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 +
                            s * hi * h1 * k12;
            if (lo_obj < hi_obj - cfg_.svm_eps) {
                a2_new = lo;
            } else if (lo_obj > hi_obj + cfg_.svm_eps) {
                a2_new = hi;
            } else {
                return false;
            }
        }
        if (std::abs(a2_new - a2) < cfg_.svm_eps * (a2_new + a2 + cfg_.svm_eps)) return false;

        double a1_new = a1 + s * (a2 - a2_new);
        if (a1_new < 0.0) a1_new = 0.0;
        if (a1_new > c) a1_new = c;

        double d1 = a1_new - a1;
        double d2 = a2_new - a2;
        double b1 = b_ - e1 - y1 * d1 * k11 - y2 * d2 * k12;
        double b2 = b_ - e2 - y1 * d1 * k12 - y2 * d2 * k22;
        if (a1_new > band_ && a1_new < c - band_) {
            b_ = b1;
        } else if (a2_new > band_ && a2_new < c - band_) {
            b_ = b2;
        } else {
            b_ = 0.5 * (b1 + b2);
        }

        axpy(w_, y1 * d1, rows_[i1]);
        axpy(w_, y2 * d2, rows_[i2]);
        alpha_[i1] = a1_new;
        alpha_[i2] = a2_new;
        return true;
    }

    const std::vector<SparseRow>& rows_;
    const std::vector<int>& y_;
    const TrainConfig& cfg_;
    int n_;
    std::vector<double> alpha_;
    std::vector<double> w_;
    std::vector<double> self_dot_;
    double band_;
    double b_ = 0.0;
};

} // namespace

SmoSolution smo_solve(const std::vector<SparseRow>& rows, const std::vector<int>& y, int dim,
                      const TrainConfig& cfg) {
    if (!(cfg.svm_c > 0.0) || !(cfg.svm_tol > 0.0) || !(cfg.svm_eps > 0.0) ||
        cfg.svm_max_passes < 1) {
        throw ConfigError("svm config requires C, tol, eps > 0 and max_passes >= 1");
    }
    if (rows.size() != y.size()) throw InputError("smo: rows and labels differ in length");
    if (rows.empty()) throw TrainingError("smo: empty training set");
    bool has_pos = false, has_neg = false;
    for (int label : y) {
        if (label == 1) {
            has_pos = true;
        } else if (label == -1) {
            has_neg = true;
        } else {
            throw InputError("smo: labels must be +1 or -1");
        }
    }
    if (!has_pos || !has_neg) throw TrainingError("smo needs both classes in the training data");
    for (const SparseRow& row : rows) {
        for (int idx : row.indices) {
            if (idx < 0 || idx >= dim) {
                throw DimensionError("feature index " + std::to_string(idx) +
                                     " outside vocabulary of size " + std::to_string(dim));
            }
        }
    }
    return SmoSolver(rows, y, dim, cfg).run();
}

LinearModel svm_train(const std::vector<LabeledVector>& data, int dim, const TrainConfig& cfg) {
    std::vector<SparseRow> rows;
    std::vector<int> y;
    rows.reserve(data.size());
    y.reserve(data.size());
    for (const LabeledVector& lv : data) {
        rows.push_back(to_sparse_row(lv.vec));
        y.push_back(lv.label == Polarity::Positive ? 1 : -1);
    }
    SmoSolution solution = smo_solve(rows, y, dim, cfg);
    LinearModel model;
    model.w = std::move(solution.w);
    model.b = solution.b;
    model.kind = LinearKind::Svm;
    return model;
}

std::pair<Polarity, double> svm_predict(const LinearModel& model, const FeatureVector& vec) {
    double margin = model.b;
    for (int idx : vec.on_indices) {
        if (idx < 0 || idx >= static_cast<int>(model.w.size())) {
            throw DimensionError("feature index " + std::to_string(idx) +
                                 " outside vocabulary of size " + std::to_string(model.w.size()));
        }
        margin += model.w[idx];
    }
    return {margin > 0.0 ? Polarity::Positive : Polarity::Negative, margin};
}

} // namespace sentibench
