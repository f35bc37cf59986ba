#include "tscale/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tscale/errors.hpp"
#include "tscale/quadrature.hpp"

namespace tscale {
namespace {

constexpr double kSeriesCut = 1e-4;

std::string fmt(double t) { return std::to_string(t); }

/// Finite-difference weights for derivative orders 0..m at z over the given
/// nodes (Fornberg's recursion). Returns the weights of order m.
std::vector<double> fd_weights(double z, const std::vector<double>& nodes, int m) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min(static_cast<int>(i), m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c[m];
}

/// Range [first, last] of grid indices lying in the same component as grid[idx].
std::pair<std::size_t, std::size_t> component_range(const TimeScale& ts, const Grid& grid,
                                                    std::size_t idx) {
    const std::size_t comp = ts.locate(grid[idx]);
    std::size_t first = idx;
    std::size_t last = idx;
    while (first > 0 && ts.locate(grid[first - 1]) == comp) {
        --first;
    }
    while (last + 1 < grid.size() && ts.locate(grid[last + 1]) == comp) {
        ++last;
    }
    return {first, last};
}

std::size_t grid_index(const SampledFunction& x, double t) {
    const auto k = x.grid().find(t);
    if (!k) {
        throw GridError("t = " + fmt(t) + " is not a grid point");
    }
    return *k;
}

cplx apply_stencil(const SampledFunction& x, std::size_t first, std::size_t last, double t,
                   int order) {
    std::vector<double> nodes;
    for (std::size_t j = first; j <= last; ++j) {
        nodes.push_back(x.grid()[j]);
    }
    const auto w = fd_weights(t, nodes, order);
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        acc += w[j] * x.values()[first + j];
    }
    return acc;
}

/// First derivative at a dense point from up to five nodes of its interval.
cplx dense_derivative(const SampledFunction& x, const TimeScale& ts, double t) {
    const std::size_t idx = grid_index(x, t);
    const auto [lo, hi] = component_range(ts, x.grid(), idx);
    if (hi - lo < 1) {
        throw GridError("no dense stencil at t = " + fmt(t) + "; refine the grid");
    }
    const std::size_t width = std::min<std::size_t>(5, hi - lo + 1);
    std::size_t first = idx >= lo + 2 ? idx - 2 : lo;
    if (first + width - 1 > hi) {
        first = hi + 1 - width;
    }
    return apply_stencil(x, first, first + width - 1, t, 1);
}

/// Second derivative from a symmetric five-node stencil, if one fits.
std::optional<cplx> dense_second_derivative(const SampledFunction& x, const TimeScale& ts,
                                            double t) {
    const std::size_t idx = grid_index(x, t);
    const auto [lo, hi] = component_range(ts, x.grid(), idx);
    if (idx < lo + 2 || idx + 2 > hi) {
        return std::nullopt;
    }
    return apply_stencil(x, idx - 2, idx + 2, t, 2);
}

/// sigma(t) and sigma(sigma(t)) when both forward jumps are scattered and both
/// targets are sampled. nullopt at boundary points; GridError if a target
/// inside the grid range is missing.
std::optional<std::pair<double, double>> two_jumps(const SampledFunction& x, const TimeScale& ts,
                                                   double t) {
    if (!in_kappa(ts, t) || mu(ts, t) == 0.0) {
        return std::nullopt;
    }
    const double s1 = sigma(ts, t);
    if (!in_kappa(ts, s1) || mu(ts, s1) == 0.0) {
        return std::nullopt;
    }
    const double s2 = sigma(ts, s1);
    const double last = x.grid().points().back();
    if (s2 > last + kMembershipTol) {
        return std::nullopt;
    }
    if (!x.has(s1) || !x.has(s2)) {
        throw GridError("forward jumps of t = " + fmt(t) + " are not sampled");
    }
    return std::pair{s1, s2};
}

cplx sigma_value(const SampledFunction& x, const TimeScale& ts, double t) {
    const double s = sigma(ts, t);
    if (!x.has(s)) {
        throw GridError("sigma(" + fmt(t) + ") = " + fmt(s) + " is not sampled");
    }
    return x.at(s);
}

double constant_mu(const TimeScale& ts) {
    const auto m = ts.constant_graininess();
    if (!m) {
        throw ConstantGraininessError("the scale does not have constant graininess");
    }
    return *m;
}

void require_below_pi(double omega, double m) {
    if (std::abs(omega * m) >= std::numbers::pi - kSingularGuard) {
        throw SingularError("|omega mu| must stay below pi (omega mu = " + fmt(omega * m) + ")");
    }
}

/// Collects per-point optional residuals into a report.
ResidualReport collect(std::string name, const Grid& grid,
                       const std::vector<std::optional<double>>& per_point, double tol) {
    std::vector<double> t;
    std::vector<double> r;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!per_point[i]) {
            ++skipped;
            continue;
        }
        t.push_back(grid[i]);
        r.push_back(*per_point[i]);
    }
    return make_report(std::move(name), std::move(t), std::move(r), tol, skipped);
}

}  // namespace

const char* to_string(Scheme s) noexcept {
    switch (s) {
        case Scheme::ExplicitDelta:
            return "explicit";
        case Scheme::TrapezoidalCayley:
            return "trapezoidal";
        case Scheme::ExactDisc:
            return "exact";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
    if (name == "explicit") return Scheme::ExplicitDelta;
    if (name == "trapezoidal") return Scheme::TrapezoidalCayley;
    if (name == "exact") return Scheme::ExactDisc;
    return std::nullopt;
}

SampledFunction::SampledFunction(Grid grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw GridError("sample count " + std::to_string(values_.size()) +
                        " does not match grid size " + std::to_string(grid_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
            throw DomainError("non-finite sample at t = " + fmt(grid_[i]));
        }
    }
}

cplx SampledFunction::at(double t) const { return values_[grid_index(*this, t)]; }

SampledFunction sample(const Grid& grid, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v[i] = f(grid[i]);
    }
    return SampledFunction(grid, std::move(v));
}

cplx average(const SampledFunction& x, const TimeScale& ts, double t) {
    const double s = sigma(ts, t);
    if (s == t) {
        return x.at(t);
    }
    return 0.5 * (x.at(t) + sigma_value(x, ts, t));
}

cplx double_average(const SampledFunction& x, const TimeScale& ts, double t) {
    const double s1 = sigma(ts, t);
    if (s1 == t) {
        return x.at(t);
    }
    const cplx x1 = sigma_value(x, ts, t);
    const cplx x2 = sigma_value(x, ts, s1);
    return 0.25 * (x.at(t) + 2.0 * x1 + x2);
}

cplx psi(cplx alpha, double mu) {
    const cplx z = alpha * mu;
    if (std::abs(z) < kSeriesCut) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 12.0 + z2 * z2 / 120.0;
    }
    if (std::abs(std::cosh(0.5 * z)) < kSingularGuard) {
        throw SingularError("psi at a tanh pole (alpha mu = " + fmt(z.real()) + "," +
                            fmt(z.imag()) + ")");
    }
    return (2.0 / z) * std::tanh(0.5 * z);
}

double phi(double x) {
    if (std::abs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 + x2 / 12.0 + x2 * x2 / 120.0;
    }
    if (std::abs(std::cos(0.5 * x)) < kSingularGuard) {
        throw SingularError("phi at a tan pole (x = " + fmt(x) + ")");
    }
    return (2.0 / x) * std::tan(0.5 * x);
}

double sinc(double x) {
    if (std::abs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

cplx delta(const SampledFunction& x, const TimeScale& ts, double t) {
    const double m = mu(ts, t);
    if (m > 0.0) {
        return (sigma_value(x, ts, t) - x.at(t)) / m;
    }
    return dense_derivative(x, ts, t);
}

cplx delta_prime(cplx alpha, const TimeScale& ts, const SampledFunction& x, double t) {
    const double m = mu(ts, t);
    if (m > 0.0) {
        // delta_alpha(mu) = mu psi_alpha(mu)
        const cplx d = m * psi(alpha, m);
        if (std::abs(d) < kSingularGuard) {
            throw SingularError("delta_alpha(mu) vanishes at t = " + fmt(t));
        }
        return (sigma_value(x, ts, t) - x.at(t)) / d;
    }
    return dense_derivative(x, ts, t);
}

cplx delta_doubleprime(double omega, const TimeScale& ts, const SampledFunction& x, double t) {
    const double m = mu(ts, t);
    if (m > 0.0) {
        require_below_pi(omega, m);
        const double wm = omega * m;
        return (sigma_value(x, ts, t) - x.at(t) * std::cos(wm)) / (m * sinc(wm));
    }
    return dense_derivative(x, ts, t);
}

std::optional<cplx> delta_delta(const SampledFunction& x, const TimeScale& ts, double t) {
    if (!in_kappa(ts, t)) {
        return std::nullopt;
    }
    const double m1 = mu(ts, t);
    if (m1 == 0.0) {
        return dense_second_derivative(x, ts, t);
    }
    const auto jumps = two_jumps(x, ts, t);
    if (!jumps) {
        return std::nullopt;
    }
    const auto [s1, s2] = *jumps;
    const double m2 = s2 - s1;
    const cplx x0 = x.at(t);
    const cplx x1 = x.at(s1);
    const cplx x2 = x.at(s2);
    return ((x2 - x1) / m2 - (x1 - x0) / m1) / m1;
}

SampledFunction solve_first_order(Scheme scheme, const TimeScale& ts, const Coefficient& alpha,
                                  cplx x0, double t0, const Grid& grid, double tol) {
    const auto anchor = grid.find(t0);
    if (!anchor) {
        throw GridError("initial time t0 = " + fmt(t0) + " is not a grid point");
    }
    const double lo = grid.points().front();
    const double hi = grid.points().back();
    switch (scheme) {
        case Scheme::ExplicitDelta:
            require_regressive(RegressivityKind::MuRegressive, ts, alpha, lo, hi);
            break;
        case Scheme::TrapezoidalCayley:
            require_regressive(RegressivityKind::CayleyRegressive, ts, alpha, lo, hi);
            break;
        case Scheme::ExactDisc:
            alpha.constant_value();
            break;
    }

    // propagation factor from grid[i] to grid[i + 1]
    const auto step_factor = [&](double a, double b) {
        cplx factor{1.0, 0.0};
        double jumps = 0.0;
        for_each_scattered(ts, a, b, [&](double s, double m) {
            jumps += m;
            switch (scheme) {
                case Scheme::ExplicitDelta:
                    factor *= 1.0 + m * alpha(s);
                    break;
                case Scheme::TrapezoidalCayley:
                    factor *= cayley(alpha(s), 0.5 * m);
                    break;
                case Scheme::ExactDisc:
                    factor *= std::exp(alpha.constant_value() * m);
                    break;
            }
        });
        const double dense_length = (b - a) - jumps;
        if (dense_length > kMembershipTol) {
            if (scheme == Scheme::ExactDisc) {
                factor *= std::exp(alpha.constant_value() * dense_length);
            } else {
                const cplx integral = delta_integral_grained(
                    ts, [&alpha](double s, double m) { return m == 0.0 ? alpha(s) : cplx{}; }, a,
                    b, tol);
                factor *= std::exp(integral);
            }
        }
        return factor;
    };

    const std::size_t n = grid.size();
    std::vector<cplx> values(n);
    values[*anchor] = x0;
    for (std::size_t i = *anchor; i + 1 < n; ++i) {
        values[i + 1] = values[i] * step_factor(grid[i], grid[i + 1]);
    }
    for (std::size_t i = *anchor; i > 0; --i) {
        values[i - 1] = values[i] / step_factor(grid[i - 1], grid[i]);
    }
    return SampledFunction(grid, std::move(values));
}

ResidualReport oscillator_residual_cayley(bool hyperbolic, const TimeScale& ts,
                                          const Coefficient& param, const SampledFunction& x,
                                          double tol, Execution exec) {
    const cplx p = param.constant_value();
    const cplx p2 = hyperbolic ? -p * p : p * p;
    const auto per_point = kernels::map_indices<std::optional<double>>(
        x.grid().size(),
        [&](std::size_t i) -> std::optional<double> {
            const double t = x.grid()[i];
            const auto dd = delta_delta(x, ts, t);
            if (!dd) {
                return std::nullopt;
            }
            const cplx term = p2 * double_average(x, ts, t);
            return std::abs(*dd + term) / std::max(1.0, std::abs(term));
        },
        exec);
    return collect(hyperbolic ? "oscillator-cayley-hyp" : "oscillator-cayley-trig", x.grid(),
                   per_point, tol);
}

ExactOscillatorReport oscillator_residual_exact(const TimeScale& ts, double omega,
                                                const SampledFunction& x, double tol,
                                                Execution exec) {
    require_below_pi(omega, constant_mu(ts));
    const double w2 = omega * omega;
    struct Forms {
        double averaged;
        double sinc_form;
        double gap;
    };
    const auto per_point = kernels::map_indices<std::optional<Forms>>(
        x.grid().size(),
        [&](std::size_t i) -> std::optional<Forms> {
            const double t = x.grid()[i];
            const auto dd = delta_delta(x, ts, t);
            if (!dd) {
                return std::nullopt;
            }
            const double m = mu(ts, t);
            const double ph = phi(omega * m);
            const double sc = sinc(0.5 * omega * m);
            const cplx xs = m > 0.0 ? sigma_value(x, ts, t) : x.at(t);
            const cplx a = *dd + w2 * ph * ph * double_average(x, ts, t);
            const cplx b = *dd + w2 * sc * sc * xs;
            // magnitude of the samples entering <<x>>, before their cancellation
            const double operands =
                m > 0.0 ? 0.25 * (std::abs(x.at(t)) + 2.0 * std::abs(xs) +
                                  std::abs(sigma_value(x, ts, sigma(ts, t))))
                        : std::abs(xs);
            const double scale = std::max(1.0, w2 * ph * ph * operands);
            return Forms{std::abs(a) / scale, std::abs(b) / scale, std::abs(a - b) / scale};
        },
        exec);

    std::vector<std::optional<double>> av(per_point.size());
    std::vector<std::optional<double>> sf(per_point.size());
    ExactOscillatorReport out;
    for (std::size_t i = 0; i < per_point.size(); ++i) {
        if (per_point[i]) {
            av[i] = per_point[i]->averaged;
            sf[i] = per_point[i]->sinc_form;
            out.max_form_gap = std::max(out.max_form_gap, per_point[i]->gap);
        }
    }
    out.averaged = collect("oscillator-exact-averaged", x.grid(), av, tol);
    out.sinc_form = collect("oscillator-exact-sinc", x.grid(), sf, tol);
    return out;
}

ResidualReport delbis_relation_residual(const TimeScale& ts, double omega,
                                        const SampledFunction& x, double tol, Execution exec) {
    require_below_pi(omega, constant_mu(ts));
    const double last = x.grid().points().back();
    const auto per_point = kernels::map_indices<std::optional<double>>(
        x.grid().size(),
        [&](std::size_t i) -> std::optional<double> {
            const double t = x.grid()[i];
            if (!in_kappa(ts, t)) {
                return std::nullopt;
            }
            const double m = mu(ts, t);
            if (m > 0.0 && t + m > last + kMembershipTol) {
                return std::nullopt;
            }
            const cplx lhs = delta(x, ts, t);
            const double sh = sinc(0.5 * omega * m);
            const cplx rhs = sinc(omega * m) * delta_doubleprime(omega, ts, x, t) -
                             0.5 * m * omega * omega * sh * sh * x.at(t);
            return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
        },
        exec);
    return collect("delbis", x.grid(), per_point, tol);
}

ResidualReport doubleprime_twice_residual(const TimeScale& ts, double omega,
                                          const SampledFunction& x, double tol, Execution exec) {
    const double w2 = omega * omega;
    const auto per_point = kernels::map_indices<std::optional<double>>(
        x.grid().size(),
        [&](std::size_t i) -> std::optional<double> {
            const double t = x.grid()[i];
            if (!in_kappa(ts, t)) {
                return std::nullopt;
            }
            const double m = mu(ts, t);
            cplx second;
            if (m == 0.0) {
                const auto d2 = dense_second_derivative(x, ts, t);
                if (!d2) {
                    return std::nullopt;
                }
                second = *d2;
            } else {
                const auto jumps = two_jumps(x, ts, t);
                if (!jumps) {
                    return std::nullopt;
                }
                require_below_pi(omega, m);
                const cplx y0 = delta_doubleprime(omega, ts, x, t);
                const cplx y1 = delta_doubleprime(omega, ts, x, jumps->first);
                const double wm = omega * m;
                second = (y1 - y0 * std::cos(wm)) / (m * sinc(wm));
            }
            const cplx term = w2 * x.at(t);
            return std::abs(second + term) / std::max(1.0, std::abs(term));
        },
        exec);
    return collect("doubleprime-twice", x.grid(), per_point, tol);
}

}  // namespace tscale
