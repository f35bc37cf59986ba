#include "tscale/exponential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tscale/errors.hpp"
#include "tscale/quadrature.hpp"

namespace tscale {
namespace {

double relative_gap(cplx lhs, cplx rhs) noexcept {
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

// z^k by repeated squaring, k >= 0.
cplx ipow(cplx z, long long k) noexcept {
    cplx acc{1.0, 0.0};
    while (k > 0) {
        if (k & 1) {
            acc *= z;
        }
        z *= z;
        k >>= 1;
    }
    return acc;
}

double nabla_step(const TimeScale& ts) {
    const auto eps = ts.constant_graininess();
    if (!ts.is_discrete() || !eps || !(*eps > 0.0)) {
        throw ConstantGraininessError(
            "the nabla exponential needs a uniform discrete scale (eps*Z slice)");
    }
    return *eps;
}

GrainedFn xi_integrand(const Coefficient& alpha) {
    return [&alpha](double s, double m) { return xi(m, alpha(s)); };
}

GrainedFn zeta_integrand(const Coefficient& alpha) {
    return [&alpha](double s, double m) { return zeta(m, alpha(s)); };
}

bool degenerate(double m, cplx beta) noexcept {
    return std::abs(1.0 + m * beta) < kSingularGuard;
}

}  // namespace

const char* to_string(ExpFamily f) noexcept {
    switch (f) {
        case ExpFamily::HilgerDelta:
            return "hilger";
        case ExpFamily::NablaConst:
            return "nabla";
        case ExpFamily::Cayley:
            return "cayley";
        case ExpFamily::Exact:
            return "exact";
    }
    return "?";
}

std::optional<ExpFamily> parse_exp_family(std::string_view name) noexcept {
    if (name == "hilger") return ExpFamily::HilgerDelta;
    if (name == "nabla") return ExpFamily::NablaConst;
    if (name == "cayley") return ExpFamily::Cayley;
    if (name == "exact") return ExpFamily::Exact;
    return std::nullopt;
}

cplx exp_of_integrand(const TimeScale& ts, const GrainedFn& g, double t, double t0, double tol) {
    return std::exp(delta_integral_grained(ts, g, t0, t, tol));
}

cplx exp_hilger(const TimeScale& ts, const Coefficient& alpha, double t, double t0, double tol) {
    require_regressive(RegressivityKind::MuRegressive, ts, alpha, t0, t);
    return exp_of_integrand(ts, xi_integrand(alpha), t, t0, tol);
}

cplx exp_cayley(const TimeScale& ts, const Coefficient& alpha, double t, double t0, double tol) {
    require_regressive(RegressivityKind::CayleyRegressive, ts, alpha, t0, t);
    return exp_of_integrand(ts, zeta_integrand(alpha), t, t0, tol);
}

cplx exp_nabla_const(double eps, cplx alpha, double t) {
    if (!(eps > 0.0)) {
        throw DomainError("nabla exponential needs eps > 0");
    }
    const double n = t / eps;
    const double k = std::round(n);
    if (std::abs(n - k) > 1e-9 * std::max(1.0, std::abs(n))) {
        throw DomainError("t = " + std::to_string(t) + " is not a multiple of eps");
    }
    const cplx base = 1.0 - alpha * eps;
    if (std::abs(base) < kSingularGuard) {
        throw SingularError("nabla exponential is singular at alpha eps = 1");
    }
    const auto steps = static_cast<long long>(std::abs(k));
    // (1 - alpha eps)^{-k}
    return k >= 0 ? 1.0 / ipow(base, steps) : ipow(base, steps);
}

cplx exp_exact(cplx alpha, double t, double t0) { return std::exp(alpha * (t - t0)); }

cplx exp_family(ExpFamily family, const TimeScale& ts, const Coefficient& alpha, double t,
                double t0, double tol) {
    switch (family) {
        case ExpFamily::HilgerDelta:
            return exp_hilger(ts, alpha, t, t0, tol);
        case ExpFamily::Cayley:
            return exp_cayley(ts, alpha, t, t0, tol);
        case ExpFamily::Exact:
            ts.locate(t);
            ts.locate(t0);
            return exp_exact(alpha.constant_value(), t, t0);
        case ExpFamily::NablaConst: {
            const double eps = nabla_step(ts);
            ts.locate(t);
            ts.locate(t0);
            return exp_nabla_const(eps, alpha.constant_value(), t - t0);
        }
    }
    throw DomainError("unknown exponential family");
}

cplx exp_hilger_general(const TimeScale& ts, const GrainedFn& beta, double t, double t0,
                        double tol, bool allow_zero) {
    bool hit = false;
    for_each_scattered(ts, t0, t, [&](double s, double m) {
        if (!hit && degenerate(m, beta(s, m))) {
            if (!allow_zero) {
                throw RegressivityError("exponent is not mu-regressive at t = " + std::to_string(s),
                                        s);
            }
            hit = true;
        }
    });
    if (hit) {
        if (t > t0) {
            return {0.0, 0.0};
        }
        throw SingularError("Hilger exponential is infinite behind a zero factor");
    }
    return exp_of_integrand(
        ts, [&beta](double s, double m) { return xi(m, beta(s, m)); }, t, t0, tol);
}

std::vector<cplx> exp_integrand_grid(const TimeScale& ts, const GrainedFn& g, double t0,
                                     const Grid& grid, double tol, Execution exec) {
    ts.locate(t0);
    const std::size_t n = grid.size();
    const auto gaps = kernels::map_indices<cplx>(
        n - 1,
        [&](std::size_t i) { return delta_integral_grained(ts, g, grid[i], grid[i + 1], tol); },
        exec);

    std::vector<cplx> log_values(n);
    std::size_t anchor = 0;
    cplx anchor_value{0.0, 0.0};
    if (const auto k = grid.find(t0)) {
        anchor = *k;
    } else {
        const auto& pts = grid.points();
        const auto it = std::upper_bound(pts.begin(), pts.end(), t0);
        anchor = (it == pts.end()) ? n - 1 : static_cast<std::size_t>(it - pts.begin());
        anchor_value = delta_integral_grained(ts, g, t0, grid[anchor], tol);
    }

    log_values[anchor] = anchor_value;
    {
        CompensatedSum re;
        CompensatedSum im;
        re.add(anchor_value.real());
        im.add(anchor_value.imag());
        for (std::size_t i = anchor; i + 1 < n; ++i) {
            re.add(gaps[i].real());
            im.add(gaps[i].imag());
            log_values[i + 1] = {re.value(), im.value()};
        }
    }
    {
        CompensatedSum re;
        CompensatedSum im;
        re.add(anchor_value.real());
        im.add(anchor_value.imag());
        for (std::size_t i = anchor; i > 0; --i) {
            re.add(-gaps[i - 1].real());
            im.add(-gaps[i - 1].imag());
            log_values[i - 1] = {re.value(), im.value()};
        }
    }

    return kernels::map_indices<cplx>(
        n, [&](std::size_t i) { return std::exp(log_values[i]); }, exec);
}

std::vector<cplx> exp_hilger_general_grid(const TimeScale& ts, const GrainedFn& beta, double t0,
                                          const Grid& grid, double tol, bool allow_zero,
                                          Execution exec) {
    const double lo = std::min(t0, grid.points().front());
    const double hi = std::max(t0, grid.points().back());
    std::vector<double> zeros;
    for_each_scattered(ts, lo, hi, [&](double s, double m) {
        if (degenerate(m, beta(s, m))) {
            if (!allow_zero) {
                throw RegressivityError(
                    "exponent is not mu-regressive at t = " + std::to_string(s), s);
            }
            zeros.push_back(s);
        }
    });

    auto values = exp_integrand_grid(
        ts,
        [&beta](double s, double m) {
            const cplx b = beta(s, m);
            return degenerate(m, b) ? cplx{0.0, 0.0} : xi(m, b);
        },
        t0, grid, tol, exec);
    if (zeros.empty()) {
        return values;
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (t > t0) {
            // any zero factor in [t0, t)
            const auto it = std::lower_bound(zeros.begin(), zeros.end(), t0 - kMembershipTol);
            if (it != zeros.end() && *it < t - kMembershipTol) {
                values[i] = {0.0, 0.0};
            }
        } else if (t < t0) {
            const auto it = std::lower_bound(zeros.begin(), zeros.end(), t - kMembershipTol);
            if (it != zeros.end() && *it < t0 - kMembershipTol) {
                throw SingularError("Hilger exponential is infinite behind a zero factor");
            }
        }
    }
    return values;
}

ExpEvaluation exp_evaluate_grid(ExpFamily family, const TimeScale& ts, const Coefficient& alpha,
                                double t0, const Grid& grid, double tol, Execution exec) {
    const double lo = std::min(t0, grid.points().front());
    const double hi = std::max(t0, grid.points().back());
    ExpEvaluation out{family, ts, alpha, t0, grid, {}, tol};

    switch (family) {
        case ExpFamily::HilgerDelta:
            require_regressive(RegressivityKind::MuRegressive, ts, alpha, lo, hi);
            out.values = exp_integrand_grid(ts, xi_integrand(alpha), t0, grid, tol, exec);
            break;
        case ExpFamily::Cayley:
            require_regressive(RegressivityKind::CayleyRegressive, ts, alpha, lo, hi);
            out.values = exp_integrand_grid(ts, zeta_integrand(alpha), t0, grid, tol, exec);
            break;
        case ExpFamily::Exact:
        case ExpFamily::NablaConst: {
            alpha.constant_value();
            if (family == ExpFamily::NablaConst) {
                nabla_step(ts);
            }
            out.values = kernels::map_indices<cplx>(
                grid.size(),
                [&](std::size_t i) { return exp_family(family, ts, alpha, grid[i], t0, tol); },
                exec);
            break;
        }
    }
    return out;
}

double check_semigroup(ExpFamily family, const TimeScale& ts, const Coefficient& alpha, double t,
                       double t0, double t1, double tol) {
    const cplx lhs = exp_family(family, ts, alpha, t, t0, tol) *
                     exp_family(family, ts, alpha, t0, t1, tol);
    return relative_gap(lhs, exp_family(family, ts, alpha, t, t1, tol));
}

double check_sigma_shift(ExpFamily family, const TimeScale& ts, const Coefficient& alpha,
                         double t, double t0, double tol) {
    const double m = mu(ts, t);
    const double s = t + m;
    const cplx a = alpha(t);
    cplx factor{1.0, 0.0};
    if (m > 0.0) {
        switch (family) {
            case ExpFamily::Cayley:
                factor = cayley(a, 0.5 * m);
                break;
            case ExpFamily::HilgerDelta:
                factor = 1.0 + m * a;
                break;
            case ExpFamily::Exact:
                factor = std::exp(alpha.constant_value() * m);
                break;
            case ExpFamily::NablaConst:
                factor = 1.0 / (1.0 - alpha.constant_value() * m);
                break;
        }
    }
    const cplx lhs = exp_family(family, ts, alpha, sigma(ts, t), t0, tol);
    (void)s;
    return relative_gap(lhs, factor * exp_family(family, ts, alpha, t, t0, tol));
}

double check_inverse(ExpFamily family, const TimeScale& ts, const Coefficient& alpha, double t,
                     double t0, double tol) {
    const cplx e = exp_family(family, ts, alpha, t, t0, tol);
    cplx inv;
    switch (family) {
        case ExpFamily::Cayley:
        case ExpFamily::Exact:
            inv = exp_family(family, ts, alpha.scaled(-1.0), t, t0, tol);
            break;
        case ExpFamily::HilgerDelta:
            inv = exp_hilger_general(
                ts, [&alpha](double s, double m) { return ominus_mu(m, alpha(s)); }, t, t0, tol,
                false);
            break;
        case ExpFamily::NablaConst: {
            const double eps = nabla_step(ts);
            const cplx a = alpha.constant_value();
            inv = exp_family(family, ts, Coefficient::constant(-a / (1.0 - eps * a)), t, t0, tol);
            break;
        }
    }
    return relative_gap(e * inv, {1.0, 0.0});
}

double check_conjugation(ExpFamily family, const TimeScale& ts, const Coefficient& alpha,
                         double t, double t0, double tol) {
    const cplx lhs = std::conj(exp_family(family, ts, alpha, t, t0, tol));
    return relative_gap(lhs, exp_family(family, ts, alpha.conjugated(), t, t0, tol));
}

double check_product_law(ExpFamily family, const TimeScale& ts, const Coefficient& alpha,
                         const Coefficient& beta, double t, double t0, double tol) {
    const cplx lhs =
        exp_family(family, ts, alpha, t, t0, tol) * exp_family(family, ts, beta, t, t0, tol);
    cplx rhs;
    switch (family) {
        case ExpFamily::Cayley:
            rhs = exp_of_integrand(
                ts,
                [&](double s, double m) { return zeta(m, oplus_cayley(m, alpha(s), beta(s))); },
                t, t0, tol);
            break;
        case ExpFamily::HilgerDelta:
            rhs = exp_hilger_general(
                ts, [&](double s, double m) { return oplus_mu(m, alpha(s), beta(s)); }, t, t0,
                tol, false);
            break;
        case ExpFamily::Exact:
            rhs = exp_exact(alpha.constant_value() + beta.constant_value(), t, t0);
            break;
        case ExpFamily::NablaConst: {
            const double eps = nabla_step(ts);
            const cplx a = alpha.constant_value();
            const cplx b = beta.constant_value();
            rhs = exp_family(family, ts, Coefficient::constant(a + b - eps * a * b), t, t0, tol);
            break;
        }
    }
    return relative_gap(lhs, rhs);
}

}  // namespace tscale
