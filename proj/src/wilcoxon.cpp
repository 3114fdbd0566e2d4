#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "sentibench/errors.hpp"
#include "sentibench/evaluation.hpp"

namespace sentibench {

const char* to_string(WilcoxonMethod m) {
    return m == WilcoxonMethod::Exact ? "exact" : "normal-approx";
}

namespace {

// Exact two-sided p over all 2^n sign assignments, aggregated with a
// subset-sum count. Tie-average ranks are half-integers, so doubled
// ranks are exact integers and the whole computation stays integral.
double exact_two_sided_p(const std::vector<std::int64_t>& doubled_ranks,
                         std::int64_t doubled_w) {
    const int n = static_cast<int>(doubled_ranks.size());
    const std::int64_t total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(),
                                               std::int64_t{0});
    std::vector<std::uint64_t> count(total + 1, 0);
    count[0] = 1;
    std::int64_t reach = 0;
    for (std::int64_t rank : doubled_ranks) {
        reach += rank;
        for (std::int64_t s = reach; s >= rank; --s) count[s] += count[s - rank];
    }
    // the null distribution of W is symmetric about total/2; count the
    // assignments at least as far from the center as observed
    const std::int64_t twice_dev = std::llabs(2 * doubled_w - total);
    std::uint64_t extreme = 0;
    for (std::int64_t s = 0; s <= total; ++s) {
        if (std::llabs(2 * s - total) >= twice_dev) extreme += count[s];
    }
    return static_cast<double>(extreme) / std::ldexp(1.0, n);
}

double normal_two_sided_p(double w, int n, const std::vector<int>& tie_sizes) {
    const double mean = n * (n + 1) / 4.0;
    double variance = n * (n + 1) * (2.0 * n + 1) / 24.0;
    for (int t : tie_sizes) {
        variance -= (static_cast<double>(t) * t * t - t) / 48.0;
    }
    if (variance <= 0) return 1.0;
    double dev = w - mean;
    // continuity correction, half a step toward the mean
    if (dev > 0.5) {
        dev -= 0.5;
    } else if (dev < -0.5) {
        dev += 0.5;
    } else {
        dev = 0.0;
    }
    double z = dev / std::sqrt(variance);
    double p = std::erfc(std::abs(z) / std::sqrt(2.0));
    return std::min(1.0, p);
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw InputError("wilcoxon: paired samples differ in length (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    }
    if (a.empty()) throw InputError("wilcoxon: empty samples");

    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult result;
    result.n_effective = static_cast<int>(diffs.size());
    if (diffs.empty()) {
        result.w_statistic = 0.0;
        result.p_two_sided = 1.0;
        result.method = WilcoxonMethod::Exact;
        return result;
    }

    const int n = result.n_effective;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::abs(diffs[x]) < std::abs(diffs[y]);
    });

    // average ranks over tie groups; doubled ranks stay integral
    std::vector<std::int64_t> doubled_rank(n, 0);
    std::vector<int> tie_sizes;
    std::int64_t doubled_w = 0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
        // ranks i+1 .. j+1 share the average; doubled it is (i+1) + (j+1)
        std::int64_t doubled_avg = static_cast<std::int64_t>(i) + j + 2;
        for (int k = i; k <= j; ++k) doubled_rank[order[k]] = doubled_avg;
        if (j > i) tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }
    for (int k = 0; k < n; ++k) {
        if (diffs[k] > 0) doubled_w += doubled_rank[k];
    }
    result.w_statistic = static_cast<double>(doubled_w) / 2.0;

    std::vector<std::int64_t> doubled_ranks_sorted(doubled_rank.begin(), doubled_rank.end());
    if (n <= 25) {
        result.method = WilcoxonMethod::Exact;
        result.p_two_sided = exact_two_sided_p(doubled_ranks_sorted, doubled_w);
    } else {
        result.method = WilcoxonMethod::NormalApprox;
        result.p_two_sided = normal_two_sided_p(result.w_statistic, n, tie_sizes);
    }
    return result;
}

} // namespace sentibench
