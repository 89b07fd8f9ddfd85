#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sqjc {

// Compensated (Kahan) accumulator; add order is the caller's contract.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// [lo, hi] with f(lo) and f(hi) of opposite sign, verified at construction.
class RootBracket {
public:
    RootBracket(const std::function<double(double)>& f, double lo, double hi);
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double f_lo() const { return f_lo_; }
    double f_hi() const { return f_hi_; }

private:
    double lo_, hi_, f_lo_, f_hi_;
};

// lo < mid < hi with f(mid) strictly below both ends, verified at construction.
class MinBracket {
public:
    MinBracket(const std::function<double(double)>& f, double lo, double mid, double hi);
    double lo() const { return lo_; }
    double mid() const { return mid_; }
    double hi() const { return hi_; }
    double f_mid() const { return f_mid_; }

private:
    double lo_, mid_, hi_, f_mid_;
};

// Bisection root of f inside the bracket; interval is contracted monotonically
// until its width is <= tol, and the final midpoint is returned.
double bisect(const std::function<double(double)>& f, const RootBracket& bracket, double tol);

// Golden-section minimum of a unimodal f; contracts the bracket to width <= tol
// and returns an interior point whose value is <= f at both final ends.
double minimize_scalar(const std::function<double(double)>& f, const MinBracket& bracket,
                       double tol);

// Uniform grid scan over [lo, hi] looking for an interior minimum triple.
// Throws SolverError (with a scan excerpt) if the minimum sits on the boundary.
MinBracket scan_for_minimum(const std::function<double(double)>& f, double lo, double hi,
                            std::size_t samples);

// Trapezoidal average of uniformly spaced samples: exact for affine data,
// O(step^2) on smooth data. Compensated summation keeps 2e4-sample grids tight.
double trapezoid_mean(const std::vector<double>& values, double step);

}  // namespace sqjc
