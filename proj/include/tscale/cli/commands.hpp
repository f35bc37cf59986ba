#pragma once

#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tscale/errors.hpp"
#include "tscale/time_scale.hpp"

namespace tscale::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitIdentityFailed = 1;
inline constexpr int kExitRegressivity = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitTolerance = 4;

/// Unknown names, missing options and other invalid run configurations.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Command { Eval, Identity, Converge, Solve };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Eval;
    std::string scale;
    std::string family = "cayley";
    /// exp, cosh, sinh, cos or sin; empty picks a default per command.
    std::string function;
    std::string identity;
    std::string kind = "trig";
    std::string scheme = "trapezoidal";
    /// Exponent or hyperbolic parameter; its real part is the frequency omega.
    cplx alpha{1.0, 0.0};
    std::optional<cplx> beta;
    std::optional<double> t0;
    std::optional<std::pair<double, double>> range;
    /// Second base point of the semigroup identity.
    std::optional<double> t1;
    /// Evaluation point of a convergence study.
    double target = 1.0;
    /// Convergence-study step sizes; empty means 2^-k for k = 1..10.
    std::vector<double> eps;
    double dense_step = 0.01;
    double tol = 1e-12;
    cplx x0{1.0, 0.0};
    Format format = Format::Csv;
};

struct CommandResult {
    int exit_code = kExitPass;
    std::string output;
};

CommandResult cmd_eval(const RunConfig& cfg);
CommandResult cmd_identity(const RunConfig& cfg);
CommandResult cmd_converge(const RunConfig& cfg);
CommandResult cmd_solve(const RunConfig& cfg);

/// Maps a library exception to its process exit code.
int exit_code_for(const std::exception& e) noexcept;

/// Dispatches cfg.command. Output goes to out, diagnostics to err; returns the
/// exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Least-squares slope of log(error) against log(eps) over the last `last`
/// pairs with a positive error. NaN when fewer than two remain.
double fitted_slope(const std::vector<double>& eps, const std::vector<double>& error,
                    std::size_t last = 5);

}  // namespace tscale::cli
