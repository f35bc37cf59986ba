#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace tscale {

using cplx = std::complex<double>;

/// Absolute tolerance used to decide membership of a real number in a scale.
inline constexpr double kMembershipTol = 1e-12;

struct ClosedInterval {
    double lo;
    double hi;

    friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

struct IsolatedPoint {
    double t;

    friend bool operator==(const IsolatedPoint&, const IsolatedPoint&) = default;
};

using Component = std::variant<ClosedInterval, IsolatedPoint>;

double component_lo(const Component& c) noexcept;
double component_hi(const Component& c) noexcept;

/// A time scale restricted to a finite, strictly ordered union of closed
/// intervals and isolated points. Immutable after construction.
class TimeScale {
public:
    /// Throws DomainError unless the components are finite, ordered, and
    /// separated by more than kMembershipTol.
    explicit TimeScale(std::vector<Component> components);

    static TimeScale interval(double lo, double hi);
    static TimeScale points(std::vector<double> ts);
    /// {start, start + step, ..., start + (count - 1) step}; a slice of eps*Z.
    static TimeScale uniform(double start, double step, std::size_t count);

    const std::vector<Component>& components() const noexcept { return components_; }
    std::size_t size() const noexcept { return components_.size(); }

    double min() const noexcept;
    double max() const noexcept;

    bool contains(double t) const noexcept;

    /// Index of the component holding t; DomainError if t is not a member.
    std::size_t locate(double t) const;

    /// True when every component is an isolated point.
    bool is_discrete() const noexcept;

    /// 0 for a single interval, the common step for a uniform discrete scale
    /// (relative spread below 1e-9), nullopt otherwise.
    std::optional<double> constant_graininess() const noexcept;

    friend bool operator==(const TimeScale&, const TimeScale&) = default;

private:
    std::vector<Component> components_;
};

enum class Side { Dense, Scattered };

struct PointClass {
    Side right;
    Side left;

    friend bool operator==(const PointClass&, const PointClass&) = default;
};

/// Forward jump. sigma(max) = max.
double sigma(const TimeScale& ts, double t);

/// Backward jump. rho(min) = min.
double rho(const TimeScale& ts, double t);

/// Graininess sigma(t) - t; KappaError at a left-scattered maximum.
double mu(const TimeScale& ts, double t);

PointClass classify(const TimeScale& ts, double t);

/// Whether t lies in T^kappa (i.e. t is not the left-scattered maximum).
bool in_kappa(const TimeScale& ts, double t);

/// Calls fn(s, mu(s)) for every right-scattered s in [min(t0,t1), max(t0,t1)),
/// in ascending order.
void for_each_scattered(const TimeScale& ts, double t0, double t1,
                        const std::function<void(double s, double mu)>& fn);

using ScalarFn = std::function<cplx(double)>;

/// Integrand that also receives the graininess at the evaluation point.
/// On continuous parts it is always called with mu = 0.
using GrainedFn = std::function<cplx(double s, double mu)>;

inline constexpr double kDefaultTol = 1e-12;

/// Delta integral from t0 to t1. Jump terms mu(s) f(s) over right-scattered
/// s in [t0, t1) are accumulated in ascending order with compensated
/// summation; continuous parts use adaptive Simpson to absolute tolerance tol.
cplx delta_integral(const TimeScale& ts, const ScalarFn& f, double t0, double t1,
                    double tol = kDefaultTol);

cplx delta_integral_grained(const TimeScale& ts, const GrainedFn& g, double t0, double t1,
                            double tol = kDefaultTol);

/// Delta derivative of f at t. Exact difference quotient at right-scattered
/// points; at right-dense points a Richardson-extrapolated difference quotient
/// starting at step h0 (typically accurate to ~1e-10 for smooth f).
cplx delta_derivative_numeric(const TimeScale& ts, const ScalarFn& f, double t,
                              double h0 = 1e-2);

/// Strictly increasing sample points of a scale.
class Grid {
public:
    /// Validates membership and strict monotonicity; DomainError otherwise.
    Grid(const TimeScale& ts, std::vector<double> points, double dense_step);

    const std::vector<double>& points() const noexcept { return points_; }
    double dense_step() const noexcept { return dense_step_; }
    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t i) const noexcept { return points_[i]; }

    std::optional<std::size_t> find(double t) const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::vector<double> points_;
    double dense_step_;
};

/// All isolated points and interval endpoints in [t0, t1] plus evenly spaced
/// interior points so that in-interval gaps never exceed dense_step.
Grid make_grid(const TimeScale& ts, double t0, double t1, double dense_step);

/// Grid over the whole scale.
Grid make_grid(const TimeScale& ts, double dense_step);

}  // namespace tscale
