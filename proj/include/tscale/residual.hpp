#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace tscale {

/// Per-point residuals of an identity or dynamic equation.
struct ResidualReport {
    std::string identity;
    std::vector<double> t;
    std::vector<double> residual;
    /// Optional comparison values aligned with t (e.g. a deformation factor).
    std::vector<double> reference;
    /// Points that were requested but have no stencil (boundary points).
    std::size_t skipped = 0;
    double max_residual = 0.0;
    double argmax_t = std::numeric_limits<double>::quiet_NaN();
    double tol = 0.0;

    /// max_residual < tol; a NaN residual never passes.
    bool pass() const noexcept { return max_residual < tol; }
};

/// Builds a report, taking the first maximum in ascending t. NaN residuals
/// propagate into max_residual.
ResidualReport make_report(std::string identity, std::vector<double> t,
                           std::vector<double> residual, double tol, std::size_t skipped = 0,
                           std::vector<double> reference = {});

}  // namespace tscale
