#include "tscale/time_scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tscale/errors.hpp"
#include "tscale/quadrature.hpp"

namespace tscale {
namespace {

std::string fmt_point(double t) { return std::to_string(t); }

bool is_interval(const Component& c) noexcept {
    return std::holds_alternative<ClosedInterval>(c);
}

}  // namespace

double component_lo(const Component& c) noexcept {
    return std::visit(
        [](const auto& v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ClosedInterval>) {
                return v.lo;
            } else {
                return v.t;
            }
        },
        c);
}

double component_hi(const Component& c) noexcept {
    return std::visit(
        [](const auto& v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ClosedInterval>) {
                return v.hi;
            } else {
                return v.t;
            }
        },
        c);
}

TimeScale::TimeScale(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) {
        throw DomainError("time scale needs at least one component");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const double lo = component_lo(components_[i]);
        const double hi = component_hi(components_[i]);
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw DomainError("time scale component has a non-finite bound");
        }
        if (is_interval(components_[i]) && !(hi - lo > kMembershipTol)) {
            throw DomainError("interval [" + fmt_point(lo) + ", " + fmt_point(hi) +
                              "] is empty or degenerate");
        }
        if (i > 0 && !(lo - component_hi(components_[i - 1]) > kMembershipTol)) {
            throw DomainError("time scale components overlap or are closer than 1e-12 near " +
                              fmt_point(lo));
        }
    }
}

TimeScale TimeScale::interval(double lo, double hi) {
    return TimeScale({ClosedInterval{lo, hi}});
}

TimeScale TimeScale::points(std::vector<double> ts) {
    std::sort(ts.begin(), ts.end());
    std::vector<Component> comps;
    comps.reserve(ts.size());
    for (double t : ts) {
        comps.emplace_back(IsolatedPoint{t});
    }
    return TimeScale(std::move(comps));
}

TimeScale TimeScale::uniform(double start, double step, std::size_t count) {
    if (!(step > 0.0) || count == 0) {
        throw DomainError("uniform scale needs a positive step and count");
    }
    std::vector<Component> comps;
    comps.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        comps.emplace_back(IsolatedPoint{start + static_cast<double>(k) * step});
    }
    return TimeScale(std::move(comps));
}

double TimeScale::min() const noexcept { return component_lo(components_.front()); }

double TimeScale::max() const noexcept { return component_hi(components_.back()); }

bool TimeScale::contains(double t) const noexcept {
    const auto it = std::partition_point(
        components_.begin(), components_.end(),
        [t](const Component& c) { return component_hi(c) < t - kMembershipTol; });
    return it != components_.end() && component_lo(*it) - kMembershipTol <= t;
}

std::size_t TimeScale::locate(double t) const {
    const auto it = std::partition_point(
        components_.begin(), components_.end(),
        [t](const Component& c) { return component_hi(c) < t - kMembershipTol; });
    if (it == components_.end() || component_lo(*it) - kMembershipTol > t || std::isnan(t)) {
        throw DomainError("point " + fmt_point(t) + " is not in the time scale");
    }
    return static_cast<std::size_t>(it - components_.begin());
}

bool TimeScale::is_discrete() const noexcept {
    return std::none_of(components_.begin(), components_.end(), is_interval);
}

std::optional<double> TimeScale::constant_graininess() const noexcept {
    if (components_.size() == 1) {
        if (is_interval(components_.front())) {
            return 0.0;
        }
        return std::nullopt;
    }
    if (!is_discrete()) {
        return std::nullopt;
    }
    const double step = (max() - min()) / static_cast<double>(components_.size() - 1);
    for (std::size_t i = 1; i < components_.size(); ++i) {
        const double gap = component_lo(components_[i]) - component_lo(components_[i - 1]);
        if (std::abs(gap - step) > 1e-9 * step) {
            return std::nullopt;
        }
    }
    return step;
}

double sigma(const TimeScale& ts, double t) {
    const std::size_t i = ts.locate(t);
    const auto& c = ts.components()[i];
    if (is_interval(c) && t < component_hi(c) - kMembershipTol) {
        return t;
    }
    if (i + 1 < ts.size()) {
        return component_lo(ts.components()[i + 1]);
    }
    return t;
}

double rho(const TimeScale& ts, double t) {
    const std::size_t i = ts.locate(t);
    const auto& c = ts.components()[i];
    if (is_interval(c) && t > component_lo(c) + kMembershipTol) {
        return t;
    }
    if (i > 0) {
        return component_hi(ts.components()[i - 1]);
    }
    return t;
}

bool in_kappa(const TimeScale& ts, double t) {
    const std::size_t i = ts.locate(t);
    if (i + 1 != ts.size() || is_interval(ts.components()[i])) {
        return true;
    }
    // Last component is an isolated point: it is the maximum, and it is
    // left-scattered unless it is the only point of the scale.
    return ts.size() == 1;
}

double mu(const TimeScale& ts, double t) {
    if (!in_kappa(ts, t)) {
        throw KappaError("graininess undefined at the left-scattered maximum " + fmt_point(t));
    }
    return sigma(ts, t) - t;
}

PointClass classify(const TimeScale& ts, double t) {
    return {sigma(ts, t) == t ? Side::Dense : Side::Scattered,
            rho(ts, t) == t ? Side::Dense : Side::Scattered};
}

cplx delta_integral_grained(const TimeScale& ts, const GrainedFn& g, double t0, double t1,
                            double tol) {
    const std::size_t i0 = ts.locate(t0);
    const std::size_t i1 = ts.locate(t1);
    if (t0 > t1) {
        return -delta_integral_grained(ts, g, t1, t0, tol);
    }

    CompensatedSum jump_re;
    CompensatedSum jump_im;
    cplx riemann{0.0, 0.0};
    bool has_riemann = false;

    const auto add_jump = [&](std::size_t i, double s) {
        const double m = component_lo(ts.components()[i + 1]) - s;
        const cplx term = m * g(s, m);
        jump_re.add(term.real());
        jump_im.add(term.imag());
    };

    for (std::size_t i = i0; i <= i1; ++i) {
        const auto& c = ts.components()[i];
        if (const auto* iv = std::get_if<ClosedInterval>(&c)) {
            const double a = (i == i0) ? t0 : iv->lo;
            const double b = (i == i1) ? t1 : iv->hi;
            if (b > a) {
                riemann += adaptive_simpson([&g](double s) { return g(s, 0.0); }, a, b, tol);
                has_riemann = true;
            }
            if (i < i1) {
                add_jump(i, iv->hi);
            }
        } else if (i < i1) {
            add_jump(i, std::get<IsolatedPoint>(c).t);
        }
    }

    cplx total{jump_re.value(), jump_im.value()};
    if (has_riemann) {
        total += riemann;
    }
    return total;
}

void for_each_scattered(const TimeScale& ts, double t0, double t1,
                        const std::function<void(double s, double mu)>& fn) {
    const std::size_t i0 = ts.locate(std::min(t0, t1));
    const std::size_t i1 = ts.locate(std::max(t0, t1));
    for (std::size_t i = i0; i < i1; ++i) {
        const double s = component_hi(ts.components()[i]);
        fn(s, component_lo(ts.components()[i + 1]) - s);
    }
}

cplx delta_integral(const TimeScale& ts, const ScalarFn& f, double t0, double t1, double tol) {
    return delta_integral_grained(
        ts, [&f](double s, double) { return f(s); }, t0, t1, tol);
}

namespace {

// Neville-style Richardson table on step halving. `order` is the leading
// error exponent: 2 for central differences, 1 for one-sided.
template <typename Quotient>
cplx richardson(Quotient quotient, double h, int order) {
    constexpr int kLevels = 6;
    cplx table[kLevels][kLevels];
    cplx best = quotient(h);
    double best_err = std::numeric_limits<double>::infinity();
    table[0][0] = best;
    for (int i = 1; i < kLevels; ++i) {
        h *= 0.5;
        table[i][0] = quotient(h);
        double factor = 1.0;
        for (int j = 1; j <= i; ++j) {
            factor *= (order == 2) ? 4.0 : 2.0;
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
            const double err = std::max(std::abs(table[i][j] - table[i][j - 1]),
                                        std::abs(table[i][j] - table[i - 1][j - 1]));
            if (err < best_err) {
                best_err = err;
                best = table[i][j];
            }
        }
    }
    return best;
}

}  // namespace

cplx delta_derivative_numeric(const TimeScale& ts, const ScalarFn& f, double t, double h0) {
    if (!in_kappa(ts, t)) {
        throw KappaError("delta derivative undefined at the left-scattered maximum " +
                         fmt_point(t));
    }
    const double s = sigma(ts, t);
    if (s != t) {
        return (f(s) - f(t)) / (s - t);
    }
    const auto& c = ts.components()[ts.locate(t)];
    const auto* iv = std::get_if<ClosedInterval>(&c);
    if (iv == nullptr) {
        throw DomainError("no derivative on a single-point scale");
    }
    const double room_left = t - iv->lo;
    const double room_right = iv->hi - t;
    const double central = std::min({h0, room_left, room_right});
    if (central >= 1e-3 * h0) {
        return richardson([&](double h) { return (f(t + h) - f(t - h)) / (2.0 * h); }, central, 2);
    }
    if (room_right >= room_left) {
        const double h = std::min(h0, room_right);
        return richardson([&](double k) { return (f(t + k) - f(t)) / k; }, h, 1);
    }
    const double h = std::min(h0, room_left);
    return richardson([&](double k) { return (f(t) - f(t - k)) / k; }, h, 1);
}

Grid::Grid(const TimeScale& ts, std::vector<double> points, double dense_step)
    : points_(std::move(points)), dense_step_(dense_step) {
    if (!(dense_step_ > 0.0)) {
        throw DomainError("grid dense_step must be positive");
    }
    if (points_.empty()) {
        throw DomainError("grid needs at least one point");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!ts.contains(points_[i])) {
            throw DomainError("grid point " + fmt_point(points_[i]) + " is not in the time scale");
        }
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            throw GridError("grid points must be strictly increasing");
        }
    }
    const double first = points_.front();
    const double last = points_.back();
    const auto require = [&](double t) {
        if (t >= first - kMembershipTol && t <= last + kMembershipTol && !find(t)) {
            throw GridError("grid skips " + fmt_point(t) +
                            " (isolated points and interval endpoints must be sampled)");
        }
    };
    for (const auto& c : ts.components()) {
        require(component_lo(c));
        require(component_hi(c));
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const bool same = ts.locate(points_[i - 1]) == ts.locate(points_[i]);
        if (same && points_[i] - points_[i - 1] > dense_step_ * (1.0 + 1e-9)) {
            throw GridError("grid step after " + fmt_point(points_[i - 1]) +
                            " exceeds dense_step");
        }
    }
}

std::optional<std::size_t> Grid::find(double t) const noexcept {
    const auto it = std::lower_bound(points_.begin(), points_.end(), t - kMembershipTol);
    if (it != points_.end() && std::abs(*it - t) <= kMembershipTol) {
        return static_cast<std::size_t>(it - points_.begin());
    }
    return std::nullopt;
}

Grid make_grid(const TimeScale& ts, double t0, double t1, double dense_step) {
    if (!(dense_step > 0.0)) {
        throw DomainError("grid dense_step must be positive");
    }
    if (t0 > t1) {
        throw DomainError("grid range is reversed");
    }
    const std::size_t i0 = ts.locate(t0);
    const std::size_t i1 = ts.locate(t1);

    std::vector<double> pts;
    const auto push = [&pts](double v) {
        if (pts.empty() || v > pts.back()) {
            pts.push_back(v);
        }
    };
    for (std::size_t i = i0; i <= i1; ++i) {
        const auto& c = ts.components()[i];
        if (const auto* iv = std::get_if<ClosedInterval>(&c)) {
            const double a = (i == i0) ? t0 : iv->lo;
            const double b = (i == i1) ? t1 : iv->hi;
            if (!(b > a)) {
                push(a);
                continue;
            }
            const auto n = static_cast<std::size_t>(
                std::max(1.0, std::ceil((b - a) / dense_step - 1e-9)));
            for (std::size_t k = 0; k < n; ++k) {
                push(a + (b - a) * static_cast<double>(k) / static_cast<double>(n));
            }
            push(b);
        } else {
            push(std::get<IsolatedPoint>(c).t);
        }
    }
    return Grid(ts, std::move(pts), dense_step);
}

Grid make_grid(const TimeScale& ts, double dense_step) {
    return make_grid(ts, ts.min(), ts.max(), dense_step);
}

}  // namespace tscale
