#pragma once

#include <complex>
#include <functional>

namespace tscale {

inline constexpr int kMaxSimpsonDepth = 40;

/// Adaptive Simpson integration of a complex-valued function over [a, b] to
/// absolute tolerance tol. Throws ToleranceError when a subinterval fails to
/// converge within max_depth bisections.
std::complex<double> adaptive_simpson(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, double tol,
                                      int max_depth = kMaxSimpsonDepth);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace tscale
