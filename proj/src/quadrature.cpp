#include "tscale/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tscale/errors.hpp"

namespace tscale {
namespace {

using Fn = std::function<std::complex<double>(double)>;

struct Panel {
    double a;
    double b;
    std::complex<double> fa;
    std::complex<double> fm;
    std::complex<double> fb;
    std::complex<double> whole;
};

std::complex<double> simpson_step(const Fn& f, const Panel& p, double tol, int depth) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const auto flm = f(lm);
    const auto frm = f(rm);
    const auto left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
    const auto right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
    const auto refined = left + right;
    const auto delta = refined - p.whole;

    // Differences at the rounding level of the panel sum cannot be reduced
    // further by bisection.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(refined);
    if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= floor) {
        return refined + delta / 15.0;
    }
    if (depth <= 0 || !(lm > p.a && rm < p.b)) {
        throw ToleranceError("adaptive Simpson did not converge on [" + std::to_string(p.a) +
                             ", " + std::to_string(p.b) + "]");
    }
    return simpson_step(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
           simpson_step(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

std::complex<double> adaptive_simpson(const Fn& f, double a, double b, double tol,
                                      int max_depth) {
    if (!(tol > 0.0)) {
        throw ToleranceError("quadrature tolerance must be positive");
    }
    if (a == b) {
        return {0.0, 0.0};
    }
    if (a > b) {
        return -adaptive_simpson(f, b, a, tol, max_depth);
    }
    const double m = 0.5 * (a + b);
    const auto fa = f(a);
    const auto fm = f(m);
    const auto fb = f(b);
    const auto whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, {a, b, fa, fm, fb, whole}, tol, max_depth);
}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

}  // namespace tscale
