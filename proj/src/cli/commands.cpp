#include "tscale/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tscale/cli/format.hpp"
#include "tscale/cli/scale_spec.hpp"
#include "tscale/dynamic.hpp"
#include "tscale/exponential.hpp"
#include "tscale/trig.hpp"

namespace tscale::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "tscale/1";
constexpr cplx kI{0.0, 1.0};

json number(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json complex_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

/// Parsed scale, base point and evaluation grid shared by the commands.
struct Setup {
    TimeScale ts;
    double t0;
    Grid grid;
};

Setup setup(const RunConfig& cfg) {
    if (!(cfg.tol > 0.0)) {
        throw ConfigError("--tol must be positive");
    }
    if (!(cfg.dense_step > 0.0)) {
        throw ConfigError("--dense-step must be positive");
    }
    TimeScale ts = parse_scale(cfg.scale);
    const auto [a, b] = cfg.range.value_or(std::pair{ts.min(), ts.max()});
    if (a > b) {
        throw ConfigError("--range must be increasing");
    }
    const double t0 = cfg.t0.value_or(a);
    ts.locate(t0);
    Grid grid = make_grid(ts, a, b, cfg.dense_step);
    return {std::move(ts), t0, std::move(grid)};
}

ExpFamily exp_family_or_throw(const std::string& name) {
    if (const auto f = parse_exp_family(name)) {
        return *f;
    }
    throw ConfigError("unknown exponential family '" + name +
                      "' (expected hilger, nabla, cayley or exact)");
}

TrigFamily trig_family_or_throw(const std::string& name) {
    if (const auto f = parse_trig_family(name)) {
        return *f;
    }
    throw ConfigError("unknown trig family '" + name + "' (expected hilger, bp, cayley or exact)");
}

TrigKind kind_or_throw(const std::string& name) {
    if (const auto k = parse_trig_kind(name)) {
        return *k;
    }
    throw ConfigError("unknown kind '" + name + "' (expected hyp or trig)");
}

double real_omega(const RunConfig& cfg) {
    if (cfg.alpha.imag() != 0.0) {
        throw ConfigError("a frequency must be real; pass --alpha <omega>");
    }
    return cfg.alpha.real();
}

Coefficient parameter(const RunConfig& cfg, TrigKind kind) {
    return kind == TrigKind::Hyperbolic ? Coefficient::constant(cfg.alpha)
                                        : Coefficient::constant(real_omega(cfg));
}

bool is_first_of_pair(const std::string& function) {
    return function == "cosh" || function == "cos";
}

TrigKind kind_of_function(const std::string& function) {
    if (function == "cosh" || function == "sinh") return TrigKind::Hyperbolic;
    if (function == "cos" || function == "sin") return TrigKind::Trigonometric;
    throw ConfigError("unknown function '" + function +
                      "' (expected exp, cosh, sinh, cos or sin)");
}

std::string table(const Grid& grid, const std::vector<cplx>& values) {
    std::string out = "t,re,im\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out += format_double(grid[i]) + "," + format_double(values[i].real()) + "," +
               format_double(values[i].imag()) + "\n";
    }
    return out;
}

json value_rows(const Grid& grid, const std::vector<cplx>& values) {
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rows.push_back({{"t", number(grid[i])},
                        {"re", number(values[i].real())},
                        {"im", number(values[i].imag())}});
    }
    return rows;
}

/// Residual report from a per-point function; nullopt marks a skipped point.
ResidualReport pointwise(std::string name, const Grid& grid, double tol,
                         const std::function<std::optional<double>(double)>& fn) {
    std::vector<double> t;
    std::vector<double> r;
    std::size_t skipped = 0;
    for (double p : grid.points()) {
        if (const auto v = fn(p)) {
            t.push_back(p);
            r.push_back(*v);
        } else {
            ++skipped;
        }
    }
    return make_report(std::move(name), std::move(t), std::move(r), tol, skipped);
}

/// Exact cos or sin of omega (t - t0) sampled on the grid.
SampledFunction harmonic_samples(const Setup& s, double omega, const std::string& function) {
    const bool cosine = function == "cos";
    if (!cosine && function != "sin") {
        throw ConfigError("this identity samples cos or sin, not '" + function + "'");
    }
    return sample(s.grid, [&](double t) {
        const double arg = omega * (t - s.t0);
        return cplx{cosine ? std::cos(arg) : std::sin(arg), 0.0};
    });
}

struct IdentityOutcome {
    ResidualReport report;
    std::optional<double> form_gap;
};

IdentityOutcome run_identity(const RunConfig& cfg, const Setup& s) {
    const std::string& id = cfg.identity;
    const Coefficient alpha = Coefficient::constant(cfg.alpha);
    const auto& ts = s.ts;
    const double t0 = s.t0;

    if (id == "pythagorean") {
        const TrigKind kind = kind_or_throw(cfg.kind);
        return {pythagorean_residual(trig_family_or_throw(cfg.family), kind, ts,
                                     parameter(cfg, kind), t0, s.grid, cfg.tol),
                std::nullopt};
    }
    if (id == "derivative") {
        const TrigKind kind = kind_or_throw(cfg.kind);
        return {derivative_residual(kind, ts, parameter(cfg, kind), t0, s.grid, cfg.tol),
                std::nullopt};
    }
    if (id == "semigroup") {
        const ExpFamily fam = exp_family_or_throw(cfg.family);
        const double t1 = cfg.t1.value_or(s.grid.points().back());
        return {pointwise(id, s.grid, cfg.tol,
                          [&](double t) -> std::optional<double> {
                              return check_semigroup(fam, ts, alpha, t, t0, t1, cfg.tol);
                          }),
                std::nullopt};
    }
    if (id == "sigma-shift") {
        const ExpFamily fam = exp_family_or_throw(cfg.family);
        return {pointwise(id, s.grid, cfg.tol,
                          [&](double t) -> std::optional<double> {
                              if (!in_kappa(ts, t)) {
                                  return std::nullopt;
                              }
                              return check_sigma_shift(fam, ts, alpha, t, t0, cfg.tol);
                          }),
                std::nullopt};
    }
    if (id == "inverse" || id == "conjugation") {
        const ExpFamily fam = exp_family_or_throw(cfg.family);
        const bool inverse = id == "inverse";
        return {pointwise(id, s.grid, cfg.tol,
                          [&](double t) -> std::optional<double> {
                              return inverse ? check_inverse(fam, ts, alpha, t, t0, cfg.tol)
                                             : check_conjugation(fam, ts, alpha, t, t0, cfg.tol);
                          }),
                std::nullopt};
    }
    if (id == "product-law") {
        const ExpFamily fam = exp_family_or_throw(cfg.family);
        const Coefficient beta = Coefficient::constant(cfg.beta.value_or(cfg.alpha));
        return {pointwise(id, s.grid, cfg.tol,
                          [&](double t) -> std::optional<double> {
                              return check_product_law(fam, ts, alpha, beta, t, t0, cfg.tol);
                          }),
                std::nullopt};
    }
    if (id == "unit-circle") {
        const Coefficient iw = Coefficient::constant(real_omega(cfg) * kI);
        const auto ev = exp_evaluate_grid(ExpFamily::Cayley, ts, iw, t0, s.grid, cfg.tol);
        std::vector<double> r(s.grid.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = std::abs(std::abs(ev.values[i]) - 1.0);
        }
        return {make_report(id, s.grid.points(), std::move(r), cfg.tol), std::nullopt};
    }
    if (id == "oscillator-cayley") {
        const TrigKind kind = kind_or_throw(cfg.kind);
        const bool hyperbolic = kind == TrigKind::Hyperbolic;
        const std::string function = cfg.function.empty() ? (hyperbolic ? "cosh" : "sin")
                                                           : cfg.function;
        if (kind_of_function(function) != kind) {
            throw ConfigError("function '" + function + "' does not match --kind " + cfg.kind);
        }
        const Coefficient param = parameter(cfg, kind);
        const TrigPair pair = evaluate_pair(TrigFamily::Cayley, kind, ts, param, t0, s.grid,
                                            cfg.tol);
        const SampledFunction x(s.grid, is_first_of_pair(function) ? pair.c : pair.s);
        return {oscillator_residual_cayley(hyperbolic, ts, param, x, cfg.tol), std::nullopt};
    }
    if (id == "oscillator-exact") {
        const double omega = real_omega(cfg);
        const auto x = harmonic_samples(s, omega, cfg.function.empty() ? "sin" : cfg.function);
        const auto both = oscillator_residual_exact(ts, omega, x, cfg.tol);
        std::vector<double> r(both.averaged.residual.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = std::max(both.averaged.residual[i], both.sinc_form.residual[i]);
        }
        return {make_report(id, both.averaged.t, std::move(r), cfg.tol, both.averaged.skipped),
                both.max_form_gap};
    }
    if (id == "delbis") {
        const double omega = real_omega(cfg);
        const auto x = harmonic_samples(s, omega, cfg.function.empty() ? "sin" : cfg.function);
        return {delbis_relation_residual(ts, omega, x, cfg.tol), std::nullopt};
    }
    if (id == "doubleprime-twice") {
        const double omega = real_omega(cfg);
        const auto x = harmonic_samples(s, omega, cfg.function.empty() ? "sin" : cfg.function);
        return {doubleprime_twice_residual(ts, omega, x, cfg.tol), std::nullopt};
    }
    throw ConfigError(
        "unknown identity '" + id +
        "' (expected pythagorean, semigroup, sigma-shift, product-law, inverse, conjugation, "
        "unit-circle, derivative, oscillator-cayley, oscillator-exact, delbis or "
        "doubleprime-twice)");
}

/// Value of the selected function on a uniform grid eps*Z and its continuum
/// counterpart at t.
std::pair<cplx, cplx> converge_point(const RunConfig& cfg, double eps) {
    const double t0 = cfg.t0.value_or(0.0);
    const double t = cfg.target;
    const double steps = (t - t0) / eps;
    const double n = std::round(steps);
    if (!(n >= 1.0) || std::abs(steps - n) > 1e-9 * std::max(1.0, steps)) {
        throw ConfigError("target t - t0 must be a positive multiple of every eps");
    }
    const TimeScale ts = TimeScale::uniform(t0, eps, static_cast<std::size_t>(n) + 1);
    const double tn = t0 + n * eps;
    const std::string function = cfg.function.empty() ? "exp" : cfg.function;

    if (function == "exp") {
        const auto fam = exp_family_or_throw(cfg.family);
        const Coefficient alpha = Coefficient::constant(cfg.alpha);
        return {exp_family(fam, ts, alpha, tn, t0, cfg.tol), std::exp(cfg.alpha * (t - t0))};
    }
    const TrigKind kind = kind_of_function(function);
    const TrigFamily fam = trig_family_or_throw(cfg.family);
    const bool first = is_first_of_pair(function);
    if (kind == TrigKind::Hyperbolic) {
        const auto [c, s] = hyp(fam, ts, Coefficient::constant(cfg.alpha), tn, t0, cfg.tol);
        const cplx arg = cfg.alpha * (t - t0);
        return {first ? c : s, first ? std::cosh(arg) : std::sinh(arg)};
    }
    const double omega = real_omega(cfg);
    const auto [c, s] = trig(fam, ts, Coefficient::constant(omega), tn, t0, cfg.tol);
    const double arg = omega * (t - t0);
    return {first ? c : s, first ? std::cos(arg) : std::sin(arg)};
}

}  // namespace

double fitted_slope(const std::vector<double>& eps, const std::vector<double>& error,
                    std::size_t last) {
    const std::size_t n = std::min(eps.size(), error.size());
    const std::size_t start = n > last ? n - last : 0;
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = start; i < n; ++i) {
        if (error[i] > 0.0 && std::isfinite(error[i]) && eps[i] > 0.0) {
            x.push_back(std::log(eps[i]));
            y.push_back(std::log(error[i]));
        }
    }
    if (x.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double m = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

CommandResult cmd_eval(const RunConfig& cfg) {
    const Setup s = setup(cfg);
    const std::string function = cfg.function.empty() ? "exp" : cfg.function;
    std::vector<cplx> values;
    if (function == "exp") {
        values = exp_evaluate_grid(exp_family_or_throw(cfg.family), s.ts,
                                   Coefficient::constant(cfg.alpha), s.t0, s.grid, cfg.tol)
                     .values;
    } else {
        const TrigKind kind = kind_of_function(function);
        const TrigPair pair = evaluate_pair(trig_family_or_throw(cfg.family), kind, s.ts,
                                            parameter(cfg, kind), s.t0, s.grid, cfg.tol);
        values = is_first_of_pair(function) ? pair.c : pair.s;
    }

    if (cfg.format == Format::Csv) {
        return {kExitPass, table(s.grid, values)};
    }
    json doc = {{"schema", kSchema},
                {"command", "eval"},
                {"scale", render_scale(s.ts)},
                {"family", cfg.family},
                {"function", function},
                {"alpha", complex_json(cfg.alpha)},
                {"t0", number(s.t0)},
                {"values", value_rows(s.grid, values)}};
    return {kExitPass, doc.dump() + "\n"};
}

CommandResult cmd_identity(const RunConfig& cfg) {
    if (cfg.identity.empty()) {
        throw ConfigError("identity needs --identity <name>");
    }
    const Setup s = setup(cfg);
    const IdentityOutcome outcome = run_identity(cfg, s);
    const ResidualReport& r = outcome.report;
    const bool pass = r.pass() && (!outcome.form_gap || *outcome.form_gap < cfg.tol);
    const int code = pass ? kExitPass : kExitIdentityFailed;
    const bool with_reference = !r.reference.empty();

    if (cfg.format == Format::Csv) {
        std::string out = with_reference ? "t,residual,deformation\n" : "t,residual\n";
        for (std::size_t i = 0; i < r.t.size(); ++i) {
            out += format_double(r.t[i]) + "," + format_double(r.residual[i]);
            if (with_reference) {
                out += "," + format_double(r.reference[i]);
            }
            out += "\n";
        }
        return {code, out};
    }

    json doc = {{"schema", kSchema},
                {"command", "identity"},
                {"identity", cfg.identity},
                {"scale", render_scale(s.ts)},
                {"max_residual", number(r.max_residual)},
                {"argmax_t", number(r.argmax_t)},
                {"pass", pass},
                {"tol", number(cfg.tol)},
                {"evaluated", r.t.size()},
                {"skipped", r.skipped}};
    if (outcome.form_gap) {
        doc["max_form_gap"] = number(*outcome.form_gap);
    }
    if (with_reference) {
        json rows = json::array();
        for (std::size_t i = 0; i < r.t.size(); ++i) {
            rows.push_back({{"t", number(r.t[i])}, {"value", number(r.reference[i])}});
        }
        doc["deformation"] = std::move(rows);
    }
    return {code, doc.dump() + "\n"};
}

CommandResult cmd_converge(const RunConfig& cfg) {
    if (!(cfg.tol > 0.0)) {
        throw ConfigError("--tol must be positive");
    }
    std::vector<double> eps = cfg.eps;
    if (eps.empty()) {
        for (int k = 1; k <= 10; ++k) {
            eps.push_back(std::ldexp(1.0, -k));
        }
    }
    std::vector<double> error;
    for (double e : eps) {
        if (!(e > 0.0)) {
            throw ConfigError("every eps must be positive");
        }
        const auto [value, reference] = converge_point(cfg, e);
        error.push_back(std::abs(value - reference));
    }
    std::vector<double> order(eps.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 1; i < eps.size(); ++i) {
        if (error[i] > 0.0 && error[i - 1] > 0.0 && eps[i] != eps[i - 1]) {
            order[i] = std::log(error[i - 1] / error[i]) / std::log(eps[i - 1] / eps[i]);
        }
    }
    const double slope = fitted_slope(eps, error);

    if (cfg.format == Format::Csv) {
        std::string out = "eps,error,order\n";
        for (std::size_t i = 0; i < eps.size(); ++i) {
            out += format_double(eps[i]) + "," + format_double(error[i]) + "," +
                   (std::isnan(order[i]) ? std::string() : format_double(order[i])) + "\n";
        }
        out += "fitted_slope," + (std::isnan(slope) ? std::string() : format_double(slope)) + "\n";
        return {kExitPass, out};
    }
    json rows = json::array();
    for (std::size_t i = 0; i < eps.size(); ++i) {
        rows.push_back(
            {{"eps", number(eps[i])}, {"error", number(error[i])}, {"order", number(order[i])}});
    }
    json doc = {{"schema", kSchema},
                {"command", "converge"},
                {"family", cfg.family},
                {"function", cfg.function.empty() ? "exp" : cfg.function},
                {"alpha", complex_json(cfg.alpha)},
                {"t", number(cfg.target)},
                {"rows", std::move(rows)},
                {"fitted_slope", number(slope)}};
    return {kExitPass, doc.dump() + "\n"};
}

CommandResult cmd_solve(const RunConfig& cfg) {
    const Setup s = setup(cfg);
    const auto scheme = parse_scheme(cfg.scheme);
    if (!scheme) {
        throw ConfigError("unknown scheme '" + cfg.scheme +
                          "' (expected explicit, trapezoidal or exact)");
    }
    const SampledFunction x = solve_first_order(*scheme, s.ts, Coefficient::constant(cfg.alpha),
                                                cfg.x0, s.t0, s.grid, cfg.tol);
    if (cfg.format == Format::Csv) {
        return {kExitPass, table(s.grid, x.values())};
    }
    json doc = {{"schema", kSchema},
                {"command", "solve"},
                {"scale", render_scale(s.ts)},
                {"scheme", cfg.scheme},
                {"alpha", complex_json(cfg.alpha)},
                {"x0", complex_json(cfg.x0)},
                {"t0", number(s.t0)},
                {"values", value_rows(s.grid, x.values())}};
    return {kExitPass, doc.dump() + "\n"};
}

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const RegressivityError*>(&e) || dynamic_cast<const SingularError*>(&e)) {
        return kExitRegressivity;
    }
    if (dynamic_cast<const ToleranceError*>(&e)) {
        return kExitTolerance;
    }
    if (dynamic_cast<const Error*>(&e)) {
        return kExitConfig;
    }
    return kExitTolerance;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        CommandResult result;
        switch (cfg.command) {
            case Command::Eval:
                result = cmd_eval(cfg);
                break;
            case Command::Identity:
                result = cmd_identity(cfg);
                break;
            case Command::Converge:
                result = cmd_converge(cfg);
                break;
            case Command::Solve:
                result = cmd_solve(cfg);
                break;
        }
        out << result.output;
        out.flush();
        return result.exit_code;
    } catch (const std::exception& e) {
        err << "tscale: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace tscale::cli
