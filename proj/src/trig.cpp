#include "tscale/trig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tscale/errors.hpp"
#include "tscale/exponential.hpp"

namespace tscale {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kRealityTol = 1e-13;

double real_checked(cplx v, const char* what) {
    if (std::abs(v.imag()) > kRealityTol * std::max(1.0, std::abs(v))) {
        throw ToleranceError(std::string(what) + " has an imaginary residue above 1e-13");
    }
    return v.real();
}

double real_frequency(const Coefficient& omega) {
    const cplx w = omega.constant_value();
    if (w.imag() != 0.0) {
        throw DomainError("trigonometric frequency must be real");
    }
    return w.real();
}

GrainedFn ominus_integrand(const Coefficient& alpha) {
    return [&alpha](double s, double m) { return ominus_mu(m, alpha(s)); };
}

// (e_plus, e_minus) at a single point for the hyperbolic construction.
std::pair<cplx, cplx> exp_pair(TrigFamily family, const TimeScale& ts, const Coefficient& alpha,
                               double t, double t0, double tol) {
    switch (family) {
        case TrigFamily::Hilger:
            return {exp_hilger(ts, alpha, t, t0, tol),
                    exp_hilger_general(ts, ominus_integrand(alpha), t, t0, tol, false)};
        case TrigFamily::BohnerPeterson: {
            const Coefficient neg = alpha.scaled(-1.0);
            return {exp_hilger_general(
                        ts, [&alpha](double s, double) { return alpha(s); }, t, t0, tol, true),
                    exp_hilger_general(
                        ts, [&neg](double s, double) { return neg(s); }, t, t0, tol, true)};
        }
        case TrigFamily::Cayley:
            return {exp_cayley(ts, alpha, t, t0, tol),
                    exp_cayley(ts, alpha.scaled(-1.0), t, t0, tol)};
        case TrigFamily::Exact:
            return {exp_family(ExpFamily::Exact, ts, alpha, t, t0, tol),
                    exp_family(ExpFamily::Exact, ts, alpha.scaled(-1.0), t, t0, tol)};
    }
    throw DomainError("unknown trig family");
}

std::pair<std::vector<cplx>, std::vector<cplx>> exp_pair_grid(TrigFamily family,
                                                              const TimeScale& ts,
                                                              const Coefficient& alpha, double t0,
                                                              const Grid& grid, double tol,
                                                              Execution exec) {
    const Coefficient neg = alpha.scaled(-1.0);
    switch (family) {
        case TrigFamily::Hilger:
            return {exp_evaluate_grid(ExpFamily::HilgerDelta, ts, alpha, t0, grid, tol, exec).values,
                    exp_hilger_general_grid(ts, ominus_integrand(alpha), t0, grid, tol, false,
                                            exec)};
        case TrigFamily::BohnerPeterson:
            return {exp_hilger_general_grid(
                        ts, [&alpha](double s, double) { return alpha(s); }, t0, grid, tol, true,
                        exec),
                    exp_hilger_general_grid(
                        ts, [&neg](double s, double) { return neg(s); }, t0, grid, tol, true,
                        exec)};
        case TrigFamily::Cayley:
            return {exp_evaluate_grid(ExpFamily::Cayley, ts, alpha, t0, grid, tol, exec).values,
                    exp_evaluate_grid(ExpFamily::Cayley, ts, neg, t0, grid, tol, exec).values};
        case TrigFamily::Exact:
            return {exp_evaluate_grid(ExpFamily::Exact, ts, alpha, t0, grid, tol, exec).values,
                    exp_evaluate_grid(ExpFamily::Exact, ts, neg, t0, grid, tol, exec).values};
    }
    throw DomainError("unknown trig family");
}

}  // namespace

const char* to_string(TrigFamily f) noexcept {
    switch (f) {
        case TrigFamily::Hilger:
            return "hilger";
        case TrigFamily::BohnerPeterson:
            return "bp";
        case TrigFamily::Cayley:
            return "cayley";
        case TrigFamily::Exact:
            return "exact";
    }
    return "?";
}

const char* to_string(TrigKind k) noexcept {
    return k == TrigKind::Hyperbolic ? "hyp" : "trig";
}

std::optional<TrigFamily> parse_trig_family(std::string_view name) noexcept {
    if (name == "hilger") return TrigFamily::Hilger;
    if (name == "bp") return TrigFamily::BohnerPeterson;
    if (name == "cayley") return TrigFamily::Cayley;
    if (name == "exact") return TrigFamily::Exact;
    return std::nullopt;
}

std::optional<TrigKind> parse_trig_kind(std::string_view name) noexcept {
    if (name == "hyp") return TrigKind::Hyperbolic;
    if (name == "trig") return TrigKind::Trigonometric;
    return std::nullopt;
}

std::pair<cplx, cplx> hyp(TrigFamily family, const TimeScale& ts, const Coefficient& alpha,
                          double t, double t0, double tol) {
    const auto [ep, em] = exp_pair(family, ts, alpha, t, t0, tol);
    return {0.5 * (ep + em), 0.5 * (ep - em)};
}

std::pair<double, double> trig(TrigFamily family, const TimeScale& ts, const Coefficient& omega,
                               double t, double t0, double tol) {
    if (family == TrigFamily::Hilger || family == TrigFamily::Exact) {
        if (!omega.is_constant()) {
            throw DomainError(std::string(to_string(family)) +
                              " trigonometric functions need a constant frequency");
        }
        const double w = real_frequency(omega);
        ts.locate(t);
        ts.locate(t0);
        return {std::cos(w * (t - t0)), std::sin(w * (t - t0))};
    }
    const auto [ep, em] = exp_pair(family, ts, omega.scaled(kI), t, t0, tol);
    return {real_checked(0.5 * (ep + em), "cos"), real_checked((ep - em) / (2.0 * kI), "sin")};
}

TrigPair evaluate_pair(TrigFamily family, TrigKind kind, const TimeScale& ts,
                       const Coefficient& param, double t0, const Grid& grid, double tol,
                       Execution exec) {
    TrigPair out{family, kind, param, t0, grid, {}, {}};
    const std::size_t n = grid.size();
    out.c.resize(n);
    out.s.resize(n);

    if (kind == TrigKind::Trigonometric &&
        (family == TrigFamily::Hilger || family == TrigFamily::Exact)) {
        if (!param.is_constant()) {
            throw DomainError(std::string(to_string(family)) +
                              " trigonometric functions need a constant frequency");
        }
        const double w = real_frequency(param);
        ts.locate(t0);
        for (std::size_t i = 0; i < n; ++i) {
            out.c[i] = std::cos(w * (grid[i] - t0));
            out.s[i] = std::sin(w * (grid[i] - t0));
        }
        return out;
    }

    const Coefficient alpha = kind == TrigKind::Hyperbolic ? param : param.scaled(kI);
    const auto [ep, em] = exp_pair_grid(family, ts, alpha, t0, grid, tol, exec);
    for (std::size_t i = 0; i < n; ++i) {
        if (kind == TrigKind::Hyperbolic) {
            out.c[i] = 0.5 * (ep[i] + em[i]);
            out.s[i] = 0.5 * (ep[i] - em[i]);
        } else {
            out.c[i] = real_checked(0.5 * (ep[i] + em[i]), "cos");
            out.s[i] = real_checked((ep[i] - em[i]) / (2.0 * kI), "sin");
        }
    }
    return out;
}

ResidualReport pythagorean_residual(TrigFamily family, TrigKind kind, const TimeScale& ts,
                                    const Coefficient& param, double t0, const Grid& grid,
                                    double tol, Execution exec) {
    const TrigPair pair = evaluate_pair(family, kind, ts, param, t0, grid, tol, exec);
    const std::size_t n = grid.size();
    const bool hyperbolic = kind == TrigKind::Hyperbolic;

    std::vector<cplx> expected(n, cplx{1.0, 0.0});
    std::vector<double> reference;
    if (family == TrigFamily::BohnerPeterson) {
        // e_{-mu alpha^2} for cosh/sinh, e_{mu omega^2} for cos/sin
        const double sign = hyperbolic ? -1.0 : 1.0;
        expected = exp_hilger_general_grid(
            ts,
            [&param, sign](double s, double m) {
                const cplx p = param(s);
                return sign * m * p * p;
            },
            t0, grid, tol, true, exec);
        reference.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            reference[i] = expected[i].real();
        }
    }

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx c = pair.c[i];
        const cplx s = pair.s[i];
        const cplx lhs = hyperbolic ? c * c - s * s : c * c + s * s;
        // scale by the size of the terms that cancel
        const double scale =
            std::max({1.0, std::abs(expected[i]), std::norm(c) + std::norm(s)});
        residual[i] = std::abs(lhs - expected[i]) / scale;
    }
    std::string name = std::string("pythagorean-") + to_string(family) + "-" + to_string(kind);
    return make_report(std::move(name), grid.points(), std::move(residual), tol, 0,
                       std::move(reference));
}

ResidualReport derivative_residual(TrigKind kind, const TimeScale& ts, const Coefficient& param,
                                   double t0, const Grid& grid, double tol, Execution exec) {
    const bool hyperbolic = kind == TrigKind::Hyperbolic;
    const Coefficient alpha = hyperbolic ? param : param.scaled(kI);
    const auto value = [&](double u) { return hyp(TrigFamily::Cayley, ts, alpha, u, t0, tol); };
    // trig: Cos = C, Sin = S / i with C, S the Cayley cosh/sinh of i omega
    const auto to_pair = [hyperbolic](std::pair<cplx, cplx> p) {
        return hyperbolic ? p : std::pair<cplx, cplx>{p.first, p.second / kI};
    };

    constexpr double kSkip = -1.0;
    const auto per_point = kernels::map_indices<double>(
        grid.size(),
        [&](std::size_t i) -> double {
            const double t = grid[i];
            if (!in_kappa(ts, t)) {
                return kSkip;
            }
            const double m = mu(ts, t);
            const auto [c0, s0] = to_pair(value(t));
            cplx dc;
            cplx ds;
            cplx avg_c = c0;
            cplx avg_s = s0;
            if (m > 0.0) {
                const auto [c1, s1] = to_pair(value(t + m));
                dc = (c1 - c0) / m;
                ds = (s1 - s0) / m;
                avg_c = 0.5 * (c0 + c1);
                avg_s = 0.5 * (s0 + s1);
            } else {
                dc = delta_derivative_numeric(
                    ts, [&](double u) { return to_pair(value(u)).first; }, t);
                ds = delta_derivative_numeric(
                    ts, [&](double u) { return to_pair(value(u)).second; }, t);
            }
            const cplx p = param(t);
            const cplx rhs_c = hyperbolic ? p * avg_s : -p * avg_s;
            const cplx rhs_s = p * avg_c;
            return std::max(std::abs(dc - rhs_c) / std::max(1.0, std::abs(rhs_c)),
                            std::abs(ds - rhs_s) / std::max(1.0, std::abs(rhs_s)));
        },
        exec);

    std::vector<double> t_used;
    std::vector<double> residual;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (per_point[i] == kSkip) {
            ++skipped;
            continue;
        }
        t_used.push_back(grid[i]);
        residual.push_back(per_point[i]);
    }
    return make_report(std::string("derivative-cayley-") + to_string(kind), std::move(t_used),
                       std::move(residual), tol, skipped);
}

std::pair<double, double> exact_trig_delta(double omega, double mu, double t) {
    if (!(mu > 0.0)) {
        throw DomainError("exact trig delta needs a right-scattered point (mu > 0)");
    }
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    const double half = std::sin(0.5 * omega * mu);
    const double cm1 = -2.0 * half * half / mu;  // (cos(omega mu) - 1) / mu
    const double sm = std::sin(omega * mu) / mu;
    return {cm1 * c - sm * s, sm * c + cm1 * s};
}

}  // namespace tscale
