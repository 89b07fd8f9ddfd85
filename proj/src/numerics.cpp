#include "sqjc/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "sqjc/errors.hpp"

namespace sqjc {

namespace {

void require_finite(double fx, double x, const char* where) {
    if (!std::isfinite(fx)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s: f(%.17g) is not finite", where, x);
        throw SolverError(buf);
    }
}

}  // namespace

RootBracket::RootBracket(const std::function<double(double)>& f, double lo, double hi)
    : lo_(lo), hi_(hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("RootBracket: endpoints must be finite with lo < hi");
    }
    f_lo_ = f(lo);
    f_hi_ = f(hi);
    require_finite(f_lo_, lo, "RootBracket");
    require_finite(f_hi_, hi, "RootBracket");
    if (!(f_lo_ * f_hi_ < 0.0)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "RootBracket: no sign change: f(%.17g)=%.17g, f(%.17g)=%.17g", lo, f_lo_,
                      hi, f_hi_);
        throw DomainError(buf);
    }
}

MinBracket::MinBracket(const std::function<double(double)>& f, double lo, double mid, double hi)
    : lo_(lo), mid_(mid), hi_(hi) {
    if (!(lo < mid && mid < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("MinBracket: endpoints must be finite with lo < mid < hi");
    }
    double f_lo = f(lo);
    f_mid_ = f(mid);
    double f_hi = f(hi);
    require_finite(f_lo, lo, "MinBracket");
    require_finite(f_mid_, mid, "MinBracket");
    require_finite(f_hi, hi, "MinBracket");
    if (!(f_mid_ < f_lo && f_mid_ < f_hi)) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "MinBracket: middle value not below ends: f(%.17g)=%.17g, f(%.17g)=%.17g, "
                      "f(%.17g)=%.17g",
                      lo, f_lo, mid, f_mid_, hi, f_hi);
        throw DomainError(buf);
    }
}

double bisect(const std::function<double(double)>& f, const RootBracket& bracket, double tol) {
    if (!(tol > 0.0)) throw DomainError("bisect: tol must be positive");
    double lo = bracket.lo(), hi = bracket.hi();
    double f_lo = bracket.f_lo();
    while (hi - lo > tol) {
        double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;  // interval at floating resolution
        double f_mid = f(mid);
        require_finite(f_mid, mid, "bisect");
        if (f_mid == 0.0) return mid;
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

double minimize_scalar(const std::function<double(double)>& f, const MinBracket& bracket,
                       double tol) {
    if (!(tol > 0.0)) throw DomainError("minimize_scalar: tol must be positive");
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = bracket.lo(), hi = bracket.hi();
    // Seed the two golden probes, reusing the bracket midpoint for whichever
    // side it happens to fall on.
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    require_finite(f1, x1, "minimize_scalar");
    require_finite(f2, x2, "minimize_scalar");
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
            require_finite(f1, x1, "minimize_scalar");
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
            require_finite(f2, x2, "minimize_scalar");
        }
        if (x1 >= x2) break;  // floating resolution reached
    }
    return f1 < f2 ? x1 : x2;
}

MinBracket scan_for_minimum(const std::function<double(double)>& f, double lo, double hi,
                            std::size_t samples) {
    if (samples < 3) throw DomainError("scan_for_minimum: needs at least 3 samples");
    if (!(lo < hi)) throw DomainError("scan_for_minimum: needs lo < hi");
    std::vector<double> xs(samples), fs(samples);
    double step = (hi - lo) / static_cast<double>(samples - 1);
    std::size_t best = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        xs[i] = (i + 1 == samples) ? hi : lo + step * static_cast<double>(i);
        fs[i] = f(xs[i]);
        require_finite(fs[i], xs[i], "scan_for_minimum");
        if (fs[i] < fs[best]) best = i;
    }
    // `best` keeps the first of any tied minima, so everything left of it is
    // strictly above; walk right past a flat run so the bracket is strict too.
    std::size_t right = best + 1;
    while (right < samples && fs[right] == fs[best]) ++right;
    if (best == 0 || right == samples) {
        char buf[320];
        std::snprintf(buf, sizeof buf,
                      "scan_for_minimum: minimum on boundary of [%.17g, %.17g]: "
                      "f(%.17g)=%.17g, f(%.17g)=%.17g, f(%.17g)=%.17g",
                      lo, hi, xs.front(), fs.front(), xs[best], fs[best], xs.back(), fs.back());
        throw SolverError(buf);
    }
    return MinBracket(f, xs[best - 1], xs[best], xs[right]);
}

double trapezoid_mean(const std::vector<double>& values, double step) {
    if (values.size() < 2) throw DomainError("trapezoid_mean: needs at least 2 samples");
    if (!(step > 0.0)) throw DomainError("trapezoid_mean: step must be positive");
    KahanSum sum;
    sum.add(0.5 * values.front());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum.add(values[i]);
    sum.add(0.5 * values.back());
    return sum.value() / static_cast<double>(values.size() - 1);
}

}  // namespace sqjc
