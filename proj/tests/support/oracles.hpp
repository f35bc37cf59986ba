#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

/// Reference computations written without the library, used to check it.
namespace oracle {

using cplx = std::complex<double>;

/// Neumaier running sum, ascending order.
class Neumaier {
public:
    void add(double x) {
        const double t = s_ + x;
        c_ += std::abs(s_) >= std::abs(x) ? (s_ - t) + x : (x - t) + s_;
        s_ = t;
    }
    double value() const { return s_ + c_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// sum over i in [i0, i1) of (p[i+1] - p[i]) f(p[i]), ascending, on a sorted
/// point list.
inline cplx discrete_integral(const std::vector<double>& p, std::size_t i0, std::size_t i1,
                              const std::function<cplx(double)>& f) {
    Neumaier re;
    Neumaier im;
    for (std::size_t i = i0; i < i1; ++i) {
        const double mu = p[i + 1] - p[i];
        const cplx v = f(p[i]);
        re.add(mu * v.real());
        im.add(mu * v.imag());
    }
    return {re.value(), im.value()};
}

/// (1 + alpha eps)^n by repeated multiplication.
inline cplx hilger_on_uniform(cplx alpha, double eps, int n) {
    cplx v{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        v *= 1.0 + alpha * eps;
    }
    return v;
}

/// ((1 + alpha eps / 2) / (1 - alpha eps / 2))^n by repeated multiplication.
inline cplx cayley_on_uniform(cplx alpha, double eps, int n) {
    const cplx r = (1.0 + 0.5 * alpha * eps) / (1.0 - 0.5 * alpha * eps);
    cplx v{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        v *= r;
    }
    return v;
}

/// Product over the jumps of a discrete point list from p[0] to p[n].
inline cplx step_product(const std::vector<double>& p, std::size_t n,
                         const std::function<cplx(double mu)>& factor) {
    cplx v{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        v *= factor(p[i + 1] - p[i]);
    }
    return v;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Least-squares slope of y on x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

}  // namespace oracle
