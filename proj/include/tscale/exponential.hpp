#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tscale/parallel.hpp"
#include "tscale/time_scale.hpp"
#include "tscale/transforms.hpp"

namespace tscale {

enum class ExpFamily {
    HilgerDelta,  // e_alpha, integrand xi_mu(alpha)
    NablaConst,   // (1 - alpha eps)^{-(t - t0)/eps} on eps*Z, constant alpha
    Cayley,       // E_alpha, integrand zeta_mu(alpha)
    Exact,        // exp(alpha (t - t0)), constant alpha
};

const char* to_string(ExpFamily f) noexcept;
std::optional<ExpFamily> parse_exp_family(std::string_view name) noexcept;

/// Hilger exponential e_alpha(t, t0). RegressivityError unless alpha is
/// mu-regressive on the scattered points between t0 and t.
cplx exp_hilger(const TimeScale& ts, const Coefficient& alpha, double t, double t0,
                double tol = kDefaultTol);

/// Cayley exponential E_alpha(t, t0). RegressivityError unless mu alpha != +-2
/// on the scattered points between t0 and t.
cplx exp_cayley(const TimeScale& ts, const Coefficient& alpha, double t, double t0,
                double tol = kDefaultTol);

/// Nabla exponential on eps*Z with constant alpha and t0 = 0. t must be an
/// integer multiple of eps (DomainError otherwise).
cplx exp_nabla_const(double eps, cplx alpha, double t);

/// exp(alpha (t - t0)).
cplx exp_exact(cplx alpha, double t, double t0);

/// Dispatches on family. NablaConst and Exact need a constant coefficient;
/// NablaConst also needs a uniform discrete scale.
cplx exp_family(ExpFamily family, const TimeScale& ts, const Coefficient& alpha, double t,
                double t0, double tol = kDefaultTol);

/// exp of the delta integral of g from t0 to t.
cplx exp_of_integrand(const TimeScale& ts, const GrainedFn& g, double t, double t0,
                      double tol = kDefaultTol);

/// Hilger exponential of the mu-dependent exponent beta(s, mu(s)). With
/// allow_zero, a scattered point where 1 + mu beta vanishes makes the value
/// exactly 0 for every t past it (and SingularError before t0); without it,
/// such a point raises RegressivityError.
cplx exp_hilger_general(const TimeScale& ts, const GrainedFn& beta, double t, double t0,
                        double tol, bool allow_zero);

/// exp of the running delta integral of g from t0 to every grid point. The
/// per-gap integrals are computed by the selected kernel; the running sum is
/// accumulated serially outward from t0 so the value at t0 is exactly 1.
std::vector<cplx> exp_integrand_grid(const TimeScale& ts, const GrainedFn& g, double t0,
                                     const Grid& grid, double tol,
                                     Execution exec = Execution::Parallel);

/// Grid version of exp_hilger_general.
std::vector<cplx> exp_hilger_general_grid(const TimeScale& ts, const GrainedFn& beta,
                                          double t0, const Grid& grid, double tol,
                                          bool allow_zero, Execution exec = Execution::Parallel);

struct ExpEvaluation {
    ExpFamily family;
    TimeScale ts;
    Coefficient alpha;
    double t0;
    Grid grid;
    std::vector<cplx> values;
    double tol;
};

/// Evaluates a family on every grid point at linear total cost.
ExpEvaluation exp_evaluate_grid(ExpFamily family, const TimeScale& ts, const Coefficient& alpha,
                                double t0, const Grid& grid, double tol = kDefaultTol,
                                Execution exec = Execution::Parallel);

// The check_* functions return |lhs - rhs| / max(1, |rhs|).

/// E(t,t0) E(t0,t1) against E(t,t1).
double check_semigroup(ExpFamily family, const TimeScale& ts, const Coefficient& alpha, double t,
                       double t0, double t1, double tol = kDefaultTol);

/// E(sigma(t), t0) against the one-step factor times E(t, t0): cay(alpha, mu/2)
/// for Cayley, 1 + mu alpha for Hilger, exp(alpha mu) for Exact and
/// 1 / (1 - alpha mu) for NablaConst.
double check_sigma_shift(ExpFamily family, const TimeScale& ts, const Coefficient& alpha,
                         double t, double t0, double tol = kDefaultTol);

/// E_alpha E_{-alpha} against 1 (Cayley, Exact) or e_alpha e_{ominus alpha}
/// against 1 (Hilger).
double check_inverse(ExpFamily family, const TimeScale& ts, const Coefficient& alpha, double t,
                     double t0, double tol = kDefaultTol);

/// conj(E_alpha) against E_{conj alpha}.
double check_conjugation(ExpFamily family, const TimeScale& ts, const Coefficient& alpha,
                         double t, double t0, double tol = kDefaultTol);

/// E_alpha E_beta against E_{alpha (+) beta}, using the family's addition
/// (oplus_cayley for Cayley, oplus_mu for Hilger, + for Exact).
double check_product_law(ExpFamily family, const TimeScale& ts, const Coefficient& alpha,
                         const Coefficient& beta, double t, double t0, double tol = kDefaultTol);

}  // namespace tscale
