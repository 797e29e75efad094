#ifndef QCOMB_QUADRATURE_HPP
#define QCOMB_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcomb {

// Raised when adaptive refinement cannot reach the requested tolerance.
// Never swallowed: callers either propagate or fail loudly.
class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b] to an absolute
// tolerance. Throws QuadratureError if the subdivision depth limit is reached
// with the error estimate still above tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 52);

// Integrates over a union of intervals: the intervals are merged, then each
// merged piece is integrated with its share of the tolerance budget.
// Extra split points (e.g. resonance positions) seed the subdivision.
double integrate_segments(const std::function<double(double)>& f,
                          std::vector<std::pair<double, double>> intervals,
                          std::vector<double> split_points, double abs_tol);

}  // namespace qcomb

#endif
