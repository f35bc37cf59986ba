#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "tscale/parallel.hpp"
#include "tscale/residual.hpp"
#include "tscale/time_scale.hpp"
#include "tscale/transforms.hpp"

namespace tscale {

enum class TrigFamily {
    Hilger,          // from e_alpha and e_{ominus alpha}; trig only for constant omega
    BohnerPeterson,  // from e_alpha and e_{-alpha}
    Cayley,          // from E_alpha and E_{-alpha}
    Exact,           // continuum functions of (t - t0), constant parameter
};

enum class TrigKind { Hyperbolic, Trigonometric };

const char* to_string(TrigFamily f) noexcept;
const char* to_string(TrigKind k) noexcept;
std::optional<TrigFamily> parse_trig_family(std::string_view name) noexcept;
std::optional<TrigKind> parse_trig_kind(std::string_view name) noexcept;

/// (cosh-like, sinh-like) at t.
std::pair<cplx, cplx> hyp(TrigFamily family, const TimeScale& ts, const Coefficient& alpha,
                          double t, double t0, double tol = kDefaultTol);

/// (cos-like, sin-like) at t for a real frequency. The imaginary residue of
/// both values is checked against 1e-13 * max(1, |value|); ToleranceError if
/// it is larger.
std::pair<double, double> trig(TrigFamily family, const TimeScale& ts, const Coefficient& omega,
                               double t, double t0, double tol = kDefaultTol);

struct TrigPair {
    TrigFamily family;
    TrigKind kind;
    Coefficient parameter;
    double t0;
    Grid grid;
    std::vector<cplx> c;
    std::vector<cplx> s;
};

/// Both functions on every grid point. For Trigonometric the values carry a
/// zero imaginary part after the reality check.
TrigPair evaluate_pair(TrigFamily family, TrigKind kind, const TimeScale& ts,
                       const Coefficient& param, double t0, const Grid& grid,
                       double tol = kDefaultTol, Execution exec = Execution::Parallel);

/// c^2 - s^2 (hyperbolic) or c^2 + s^2 (trigonometric) against its expected
/// value: 1 for Hilger, Cayley and Exact, and the deformation e_{-mu alpha^2}
/// or e_{mu omega^2} for BohnerPeterson. The deformation is stored in
/// reference (its real part). Residuals are |lhs - rhs| / max(1, |rhs|).
ResidualReport pythagorean_residual(TrigFamily family, TrigKind kind, const TimeScale& ts,
                                    const Coefficient& param, double t0, const Grid& grid,
                                    double tol = kDefaultTol,
                                    Execution exec = Execution::Parallel);

/// Cayley derivative rules: Cosh' = alpha <Sinh>, Sinh' = alpha <Cosh>,
/// Cos' = -omega <Sin>, Sin' = omega <Cos>. Scattered points use the exact
/// quotient, dense points a numeric derivative. Grid points outside T^kappa
/// are skipped.
ResidualReport derivative_residual(TrigKind kind, const TimeScale& ts, const Coefficient& param,
                                   double t0, const Grid& grid, double tol,
                                   Execution exec = Execution::Parallel);

/// Delta derivatives (cos, sin) of the continuum cos(omega t), sin(omega t)
/// at a right-scattered point with graininess mu > 0.
std::pair<double, double> exact_trig_delta(double omega, double mu, double t);

}  // namespace tscale
