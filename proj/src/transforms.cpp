#include "tscale/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tscale/errors.hpp"

namespace tscale {
namespace {

// Put values lying on a branch cut on its upper side.
cplx from_above(cplx z) noexcept {
    if (z.imag() == 0.0) {
        return {z.real(), 0.0};
    }
    return z;
}

[[noreturn]] void singular(const char* what, cplx z) {
    throw SingularError(std::string(what) + " is singular at z = (" + std::to_string(z.real()) +
                        ", " + std::to_string(z.imag()) + ")");
}

// Log(1 + v) without cancellation for small v.
cplx log1p_complex(cplx v) noexcept {
    const double re = v.real();
    const double im = v.imag();
    return {0.5 * std::log1p(re * (2.0 + re) + im * im), std::atan2(im, 1.0 + re)};
}

}  // namespace

cplx xi(double h, cplx z) {
    if (h == 0.0) {
        return z;
    }
    const cplx v = from_above(z * h);
    if (std::abs(1.0 + v) < kSingularGuard) {
        singular("xi_h", z);
    }
    return log1p_complex(v) / h;
}

cplx zeta(double h, cplx z) {
    if (h == 0.0) {
        return z;
    }
    const cplx u = from_above(0.5 * h * z);
    if (std::abs(1.0 - u) < kSingularGuard || std::abs(1.0 + u) < kSingularGuard) {
        singular("zeta_h", z);
    }
    if (std::abs(h * z) < 1e-4) {
        const cplx z2 = z * z;
        const double h2 = h * h;
        return z * (1.0 + h2 * z2 * (1.0 / 12.0 + h2 * z2 / 80.0));
    }
    // 2 atanh(u) = Log((1 + u) / (1 - u)) on the principal branch, evaluated
    // on the right half-plane so that zeta is odd bit for bit.
    const bool flip = u.real() < 0.0 || (u.real() == 0.0 && std::signbit(u.imag()));
    const cplx w = 2.0 * std::atanh(flip ? -u : u) / h;
    return flip ? -w : w;
}

cplx zeta_inv(double h, cplx w) {
    if (h == 0.0) {
        return w;
    }
    const cplx x = 0.5 * h * w;
    if (std::abs(std::cosh(x)) < kSingularGuard) {
        singular("zeta_h^-1", w);
    }
    return 2.0 * std::tanh(x) / h;
}

cplx cayley(cplx z, cplx a) {
    const cplx den = 1.0 - a * z;
    if (std::abs(den) < kSingularGuard) {
        singular("cay", z);
    }
    return (1.0 + a * z) / den;
}

cplx oplus_mu(double mu, cplx a, cplx b) { return a + b + mu * (a * b); }

cplx ominus_mu(double mu, cplx a) {
    const cplx den = 1.0 + mu * a;
    if (std::abs(den) < kSingularGuard) {
        singular("ominus_mu", a);
    }
    return -a / den;
}

cplx oplus_cayley(double mu, cplx a, cplx b) {
    const cplx den = 1.0 + 0.25 * mu * mu * (a * b);
    if (std::abs(den) < kSingularGuard) {
        singular("oplus (mu^2 a b = -4)", a);
    }
    return (a + b) / den;
}

cplx beta_of_alpha(double mu, cplx a) {
    const cplx den = 1.0 - 0.5 * mu * a;
    if (std::abs(den) < kSingularGuard) {
        singular("beta_of_alpha (mu a = 2)", a);
    }
    return a / den;
}

cplx alpha_of_beta(double mu, cplx b) {
    const cplx den = 1.0 + 0.5 * mu * b;
    if (std::abs(den) < kSingularGuard) {
        singular("alpha_of_beta (mu b = -2)", b);
    }
    return b / den;
}

cplx Polynomial::operator()(double t) const noexcept {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

Coefficient Coefficient::constant(cplx value) { return Coefficient(Constant{value}, true); }

Coefficient Coefficient::piecewise(std::vector<double> breakpoints,
                                   std::vector<Polynomial> pieces, bool rd_continuous) {
    if (pieces.size() != breakpoints.size() + 1) {
        throw DomainError("piecewise coefficient needs one more piece than breakpoints");
    }
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
        std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end()) {
        throw DomainError("piecewise breakpoints must be strictly increasing");
    }
    return Coefficient(Piecewise{std::move(breakpoints), std::move(pieces)}, rd_continuous);
}

Coefficient Coefficient::tabulated(std::vector<double> points, std::vector<cplx> values,
                                   bool rd_continuous) {
    if (points.empty() || points.size() != values.size()) {
        throw DomainError("tabulated coefficient needs matching, non-empty points and values");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i] > points[i - 1])) {
            throw DomainError("tabulated points must be strictly increasing");
        }
    }
    return Coefficient(Tabulated{std::move(points), std::move(values)}, rd_continuous);
}

cplx Coefficient::operator()(double t) const {
    if (const auto* c = std::get_if<Constant>(&kind_)) {
        return c->value;
    }
    if (const auto* p = std::get_if<Piecewise>(&kind_)) {
        const auto k = std::upper_bound(p->breakpoints.begin(), p->breakpoints.end(), t) -
                       p->breakpoints.begin();
        return p->pieces[static_cast<std::size_t>(k)](t);
    }
    const auto& tab = std::get<Tabulated>(kind_);
    if (t < tab.points.front() - kMembershipTol || t > tab.points.back() + kMembershipTol) {
        throw DomainError("tabulated coefficient evaluated outside its table at " +
                          std::to_string(t));
    }
    auto it = std::lower_bound(tab.points.begin(), tab.points.end(), t - kMembershipTol);
    const auto i = static_cast<std::size_t>(it - tab.points.begin());
    if (std::abs(tab.points[i] - t) <= kMembershipTol || i == 0) {
        return tab.values[i];
    }
    const double w = (t - tab.points[i - 1]) / (tab.points[i] - tab.points[i - 1]);
    return (1.0 - w) * tab.values[i - 1] + w * tab.values[i];
}

cplx Coefficient::constant_value() const {
    if (const auto* c = std::get_if<Constant>(&kind_)) {
        return c->value;
    }
    throw DomainError("coefficient is not constant");
}

Coefficient Coefficient::scaled(cplx factor) const {
    return std::visit(
        [&](auto k) -> Coefficient {
            using K = decltype(k);
            if constexpr (std::is_same_v<K, Constant>) {
                k.value *= factor;
            } else if constexpr (std::is_same_v<K, Piecewise>) {
                for (auto& piece : k.pieces) {
                    for (auto& c : piece.coeffs) c *= factor;
                }
            } else {
                for (auto& v : k.values) v *= factor;
            }
            return Coefficient(std::move(k), rd_continuous_);
        },
        kind_);
}

Coefficient Coefficient::conjugated() const {
    return std::visit(
        [&](auto k) -> Coefficient {
            using K = decltype(k);
            if constexpr (std::is_same_v<K, Constant>) {
                k.value = std::conj(k.value);
            } else if constexpr (std::is_same_v<K, Piecewise>) {
                for (auto& piece : k.pieces) {
                    for (auto& c : piece.coeffs) c = std::conj(c);
                }
            } else {
                for (auto& v : k.values) v = std::conj(v);
            }
            return Coefficient(std::move(k), rd_continuous_);
        },
        kind_);
}

bool is_regressive(RegressivityKind kind, double mu, cplx a) noexcept {
    switch (kind) {
        case RegressivityKind::MuRegressive:
            return std::abs(1.0 + mu * a) > kSingularGuard;
        case RegressivityKind::CayleyRegressive:
            return std::abs(1.0 - 0.5 * mu * a) > kSingularGuard &&
                   std::abs(1.0 + 0.5 * mu * a) > kSingularGuard;
        case RegressivityKind::PositivelyRegressive:
            return a.imag() == 0.0 && std::abs(mu * a.real()) < 2.0 - 2.0 * kSingularGuard;
    }
    return false;
}

RegressivityReport check_regressivity(RegressivityKind kind, const TimeScale& ts,
                                      const Coefficient& a, const Grid& grid) {
    RegressivityReport report;
    for (double t : grid.points()) {
        if (!in_kappa(ts, t)) {
            continue;
        }
        if (!is_regressive(kind, mu(ts, t), a(t))) {
            report.ok = false;
            report.first_violation = t;
            break;
        }
    }
    return report;
}

void require_regressive(RegressivityKind kind, const TimeScale& ts, const Coefficient& a,
                        double t0, double t1) {
    for_each_scattered(ts, t0, t1, [&](double s, double m) {
        if (!is_regressive(kind, m, a(s))) {
            throw RegressivityError(std::string("coefficient is not ") + to_string(kind) +
                                        " at t = " + std::to_string(s),
                                    s);
        }
    });
}

const char* to_string(RegressivityKind kind) noexcept {
    switch (kind) {
        case RegressivityKind::MuRegressive:
            return "mu-regressive";
        case RegressivityKind::CayleyRegressive:
            return "regressive";
        case RegressivityKind::PositivelyRegressive:
            return "positively regressive";
    }
    return "?";
}

}  // namespace tscale
