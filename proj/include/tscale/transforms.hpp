#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "tscale/time_scale.hpp"

namespace tscale {

/// Inputs closer than this to a pole of a scalar map are rejected.
inline constexpr double kSingularGuard = 1e-9;

/// Cylinder transformation xi_h(z) = Log(1 + z h) / h, xi_0(z) = z.
cplx xi(double h, cplx z);

/// Cayley cylinder zeta_h(z) = Log((1 + z h/2) / (1 - z h/2)) / h, zeta_0(z) = z.
/// Principal branch with Im Log in (-pi, pi]; a short series is used when
/// |h z| < 1e-4.
cplx zeta(double h, cplx z);

/// Inverse of zeta_h: (2/h) tanh(h w / 2).
cplx zeta_inv(double h, cplx w);

/// Cayley transform (1 + a z) / (1 - a z).
cplx cayley(cplx z, cplx a);

/// Hilger's circle plus a + b + mu a b.
cplx oplus_mu(double mu, cplx a, cplx b);

/// Hilger's circle minus -a / (1 + mu a).
cplx ominus_mu(double mu, cplx a);

/// Lorentz-type addition (a + b) / (1 + mu^2 a b / 4).
cplx oplus_cayley(double mu, cplx a, cplx b);

/// beta = a / (1 - mu a / 2), so that E_a = e_beta.
cplx beta_of_alpha(double mu, cplx a);

/// a = beta / (1 + mu beta / 2); inverse of beta_of_alpha.
cplx alpha_of_beta(double mu, cplx b);

/// Polynomial c0 + c1 t + c2 t^2 + ... with complex coefficients.
struct Polynomial {
    std::vector<cplx> coeffs;

    cplx operator()(double t) const noexcept;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// A scalar function alpha: T -> C. Evaluation is a pure map.
class Coefficient {
public:
    struct Constant {
        cplx value;
        friend bool operator==(const Constant&, const Constant&) = default;
    };
    /// pieces.size() == breakpoints.size() + 1; piece k covers
    /// [breakpoints[k-1], breakpoints[k]).
    struct Piecewise {
        std::vector<double> breakpoints;
        std::vector<Polynomial> pieces;
        friend bool operator==(const Piecewise&, const Piecewise&) = default;
    };
    /// Values at sample points, linearly interpolated in between.
    struct Tabulated {
        std::vector<double> points;
        std::vector<cplx> values;
        friend bool operator==(const Tabulated&, const Tabulated&) = default;
    };

    static Coefficient constant(cplx value);
    static Coefficient piecewise(std::vector<double> breakpoints, std::vector<Polynomial> pieces,
                                 bool rd_continuous = true);
    static Coefficient tabulated(std::vector<double> points, std::vector<cplx> values,
                                 bool rd_continuous = true);

    cplx operator()(double t) const;

    bool is_constant() const noexcept { return std::holds_alternative<Constant>(kind_); }
    /// DomainError unless is_constant().
    cplx constant_value() const;

    bool rd_continuous() const noexcept { return rd_continuous_; }

    /// factor * alpha.
    Coefficient scaled(cplx factor) const;
    Coefficient conjugated() const;

    const std::variant<Constant, Piecewise, Tabulated>& kind() const noexcept { return kind_; }

    friend bool operator==(const Coefficient&, const Coefficient&) = default;

private:
    Coefficient(std::variant<Constant, Piecewise, Tabulated> kind, bool rd)
        : kind_(std::move(kind)), rd_continuous_(rd) {}

    std::variant<Constant, Piecewise, Tabulated> kind_;
    bool rd_continuous_;
};

enum class RegressivityKind {
    MuRegressive,          // 1 + mu a != 0
    CayleyRegressive,      // mu a != +-2
    PositivelyRegressive,  // a real and |mu a| < 2
};

/// Pointwise predicate with a kSingularGuard margin.
bool is_regressive(RegressivityKind kind, double mu, cplx a) noexcept;

struct RegressivityReport {
    bool ok = true;
    std::optional<double> first_violation;
};

/// Checks the predicate at every grid point of T^kappa (the left-scattered
/// maximum, if sampled, is skipped).
RegressivityReport check_regressivity(RegressivityKind kind, const TimeScale& ts,
                                      const Coefficient& a, const Grid& grid);

/// Throws RegressivityError at the first right-scattered point of
/// [min(t0,t1), max(t0,t1)) violating the predicate. Only scattered points
/// can fail: mu = 0 satisfies every predicate.
void require_regressive(RegressivityKind kind, const TimeScale& ts, const Coefficient& a,
                        double t0, double t1);

const char* to_string(RegressivityKind kind) noexcept;

}  // namespace tscale
