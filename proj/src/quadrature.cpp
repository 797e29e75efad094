#include "qcomb/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace qcomb {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// Columns: node, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

struct GkResult {
    double value;
    double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double g7 = kNodes[0][1] * f0;
    double k15 = kNodes[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kNodes[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += kNodes[i][1] * fi;
        k15 += kNodes[i][2] * fi;
    }
    g7 *= half;
    k15 *= half;

    const double diff = 200.0 * std::abs(g7 - k15);
    return {k15, diff * std::sqrt(diff)};
}

double integrate_recursive(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int depth) {
    const GkResult r = gk15(f, a, b);
    if (r.error <= abs_tol || !(b - a > 0.0)) return r.value;
    if (depth <= 0)
        throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]: error estimate " + std::to_string(r.error) +
                              " > tolerance " + std::to_string(abs_tol));
    const double mid = 0.5 * (a + b);
    return integrate_recursive(f, a, mid, 0.5 * abs_tol, depth - 1) +
           integrate_recursive(f, mid, b, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (!(abs_tol > 0.0)) throw QuadratureError("quadrature tolerance must be positive");
    if (a == b) return 0.0;
    if (a > b) return -integrate_adaptive(f, b, a, abs_tol, max_depth);
    return integrate_recursive(f, a, b, abs_tol, max_depth);
}

double integrate_segments(const std::function<double(double)>& f,
                          std::vector<std::pair<double, double>> intervals,
                          std::vector<double> split_points, double abs_tol) {
    // Merge overlapping intervals.
    std::erase_if(intervals, [](const auto& iv) { return !(iv.second > iv.first); });
    if (intervals.empty()) return 0.0;
    std::sort(intervals.begin(), intervals.end());
    std::vector<std::pair<double, double>> merged{intervals.front()};
    for (size_t i = 1; i < intervals.size(); ++i) {
        if (intervals[i].first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, intervals[i].second);
        else
            merged.push_back(intervals[i]);
    }

    // Cut at split points so sharp features start on piece boundaries.
    std::sort(split_points.begin(), split_points.end());
    std::vector<std::pair<double, double>> pieces;
    for (const auto& [lo, hi] : merged) {
        double cur = lo;
        for (double s : split_points) {
            if (s > cur && s < hi) {
                pieces.emplace_back(cur, s);
                cur = s;
            }
        }
        pieces.emplace_back(cur, hi);
    }

    double total_len = 0.0;
    for (const auto& [lo, hi] : pieces) total_len += hi - lo;

    double sum = 0.0;
    for (const auto& [lo, hi] : pieces) {
        const double share = std::max(abs_tol * (hi - lo) / total_len, abs_tol * 1e-3);
        sum += integrate_adaptive(f, lo, hi, share);
    }
    return sum;
}

}  // namespace qcomb
