#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "tscale/parallel.hpp"
#include "tscale/residual.hpp"
#include "tscale/time_scale.hpp"
#include "tscale/transforms.hpp"

namespace tscale {

enum class Scheme {
    ExplicitDelta,      // x^Delta = beta x
    TrapezoidalCayley,  // x^Delta = alpha <x>
    ExactDisc,          // x^Delta = alpha psi_alpha <x>, constant alpha
};

const char* to_string(Scheme s) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

/// Grid-aligned samples of a function on a time scale.
class SampledFunction {
public:
    /// GridError on a length mismatch, DomainError on a non-finite value.
    SampledFunction(Grid grid, std::vector<cplx> values);

    const Grid& grid() const noexcept { return grid_; }
    const std::vector<cplx>& values() const noexcept { return values_; }

    /// Value at a grid point; GridError if t is not sampled.
    cplx at(double t) const;
    bool has(double t) const noexcept { return grid_.find(t).has_value(); }

private:
    Grid grid_;
    std::vector<cplx> values_;
};

SampledFunction sample(const Grid& grid, const std::function<cplx(double)>& f);

/// (x(t) + x(sigma(t))) / 2; x(t) at right-dense points.
cplx average(const SampledFunction& x, const TimeScale& ts, double t);

/// Iterated average (x + 2 x^sigma + x^{sigma sigma}) / 4; x(t) at right-dense
/// points.
cplx double_average(const SampledFunction& x, const TimeScale& ts, double t);

/// (2 / (alpha mu)) tanh(alpha mu / 2), equal to 1 at alpha mu = 0.
/// SingularError within 1e-9 of a tanh pole.
cplx psi(cplx alpha, double mu);

/// (2 / x) tan(x / 2), equal to 1 at 0. SingularError at |x| = pi.
double phi(double x);

/// sin(x) / x, equal to 1 at 0.
double sinc(double x);

/// Delta derivative of samples: forward quotient at right-scattered points,
/// a finite-difference estimate over nodes of the same interval at dense ones.
cplx delta(const SampledFunction& x, const TimeScale& ts, double t);

/// (x^sigma - x) / delta_alpha(mu) with delta_alpha(mu) = (2/alpha) tanh(alpha mu / 2)
/// at scattered points; the ordinary derivative at dense points.
cplx delta_prime(cplx alpha, const TimeScale& ts, const SampledFunction& x, double t);

/// (x^sigma - x cos(omega mu)) / (mu sinc(omega mu)) at scattered points; the
/// ordinary derivative at dense points. SingularError if |omega mu| >= pi.
cplx delta_doubleprime(double omega, const TimeScale& ts, const SampledFunction& x, double t);

/// x^{Delta Delta}(t) where a stencil exists: two scattered forward jumps, or a
/// dense point with a symmetric five-node stencil in its interval. nullopt at
/// points without one (boundary points).
std::optional<cplx> delta_delta(const SampledFunction& x, const TimeScale& ts, double t);

/// Steps the first-order equation of the scheme from x(t0) = x0 over the grid.
/// Scattered steps multiply by 1 + mu beta, cay(alpha, mu/2) or exp(alpha mu);
/// dense stretches use exp of the integral of alpha (closed form for
/// ExactDisc). t0 must be a grid point (GridError).
SampledFunction solve_first_order(Scheme scheme, const TimeScale& ts, const Coefficient& alpha,
                                  cplx x0, double t0, const Grid& grid,
                                  double tol = kDefaultTol);

/// Residual of x^{Delta Delta} + omega^2 <<x>> (Trigonometric) or
/// x^{Delta Delta} - alpha^2 <<x>> (Hyperbolic) with a constant parameter.
/// Points without a second-difference stencil are skipped. Residuals are
/// |lhs| / max(1, |parameter term|).
ResidualReport oscillator_residual_cayley(bool hyperbolic, const TimeScale& ts,
                                          const Coefficient& param, const SampledFunction& x,
                                          double tol, Execution exec = Execution::Parallel);

struct ExactOscillatorReport {
    /// x^{Delta Delta} + omega^2 phi(omega mu)^2 <<x>>
    ResidualReport averaged;
    /// x^{Delta Delta} + omega^2 sinc(omega mu / 2)^2 x^sigma
    ResidualReport sinc_form;
    /// max over tested points of the difference of the two forms
    double max_form_gap = 0.0;
};

/// Both forms of the exact oscillator equation. Residuals and the gap are
/// divided by max(1, omega^2 phi^2 (|x| + 2|x^sigma| + |x^{sigma sigma}|) / 4),
/// the size of the averaged term before the cancellation inside <<x>>.
/// ConstantGraininessError unless ts has constant graininess; SingularError if
/// |omega mu| >= pi.
ExactOscillatorReport oscillator_residual_exact(const TimeScale& ts, double omega,
                                                const SampledFunction& x, double tol,
                                                Execution exec = Execution::Parallel);

/// x^Delta - (sinc(omega mu) x^{Delta''} - mu omega^2 sinc(omega mu / 2)^2 x / 2)
/// on a constant-graininess scale. The last grid point (no sigma sample) is
/// skipped.
ResidualReport delbis_relation_residual(const TimeScale& ts, double omega,
                                        const SampledFunction& x, double tol,
                                        Execution exec = Execution::Parallel);

/// x^{Delta'' Delta''} + omega^2 x at points where sigma(t) and sigma(sigma(t))
/// are sampled (scattered) or where a symmetric stencil exists (dense).
ResidualReport doubleprime_twice_residual(const TimeScale& ts, double omega,
                                          const SampledFunction& x, double tol,
                                          Execution exec = Execution::Parallel);

}  // namespace tscale
