// tscale: evaluate time-scale exponentials and trig functions, check their
// identities, run convergence studies and solve first-order equations.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tscale/cli/commands.hpp"
#include "tscale/cli/format.hpp"

namespace {

using tscale::cli::ConfigError;
using tscale::cli::RunConfig;

struct RawOptions {
    std::string alpha = "1";
    std::string beta;
    std::string x0 = "1";
    std::string range;
    std::string eps;
    std::string format = "csv";
    std::optional<double> t0;
    std::optional<double> t1;
    std::string out;
};

void add_common(CLI::App* sub, RunConfig& cfg, RawOptions& raw) {
    sub->add_option("--scale", cfg.scale, "time scale, e.g. \"interval(0,1) + points(2,3)\"");
    sub->add_option("--family", cfg.family, "hilger | nabla | bp | cayley | exact");
    sub->add_option("--function", cfg.function, "exp | cosh | sinh | cos | sin");
    sub->add_option("--alpha", raw.alpha, "parameter re[,im]; its real part is omega");
    sub->add_option("--t0", raw.t0, "base point (default: start of the range)");
    sub->add_option("--range", raw.range, "evaluation range a,b (default: whole scale)");
    sub->add_option("--dense-step", cfg.dense_step, "grid step inside intervals");
    sub->add_option("--tol", cfg.tol, "quadrature and pass tolerance");
    sub->add_option("--format", raw.format, "csv | json");
    sub->add_option("--out", raw.out, "output file (default: stdout)");
}

std::optional<std::pair<double, double>> parse_range(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        return std::nullopt;
    }
    const auto a = tscale::cli::parse_double(std::string_view(s).substr(0, comma));
    const auto b = tscale::cli::parse_double(std::string_view(s).substr(comma + 1));
    if (!a || !b) {
        return std::nullopt;
    }
    return std::pair{*a, *b};
}

void finish_config(RunConfig& cfg, const RawOptions& raw) {
    const auto alpha = tscale::cli::parse_complex(raw.alpha);
    if (!alpha) {
        throw ConfigError("--alpha expects re[,im], got '" + raw.alpha + "'");
    }
    cfg.alpha = *alpha;
    if (!raw.beta.empty()) {
        const auto beta = tscale::cli::parse_complex(raw.beta);
        if (!beta) {
            throw ConfigError("--beta expects re[,im], got '" + raw.beta + "'");
        }
        cfg.beta = *beta;
    }
    const auto x0 = tscale::cli::parse_complex(raw.x0);
    if (!x0) {
        throw ConfigError("--x0 expects re[,im], got '" + raw.x0 + "'");
    }
    cfg.x0 = *x0;
    if (!raw.range.empty()) {
        cfg.range = parse_range(raw.range);
        if (!cfg.range) {
            throw ConfigError("--range expects a,b, got '" + raw.range + "'");
        }
    }
    if (!raw.eps.empty()) {
        std::string_view rest = raw.eps;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto v = tscale::cli::parse_double(rest.substr(0, comma));
            if (!v) {
                throw ConfigError("--eps expects a comma-separated list, got '" + raw.eps + "'");
            }
            cfg.eps.push_back(*v);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    }
    if (raw.format == "csv") {
        cfg.format = tscale::cli::Format::Csv;
    } else if (raw.format == "json") {
        cfg.format = tscale::cli::Format::Json;
    } else {
        throw ConfigError("--format expects csv or json, got '" + raw.format + "'");
    }
    cfg.t0 = raw.t0;
    cfg.t1 = raw.t1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential, hyperbolic and trigonometric functions on time scales"};
    app.require_subcommand(1);

    RunConfig cfg;
    RawOptions raw;

    auto* eval = app.add_subcommand("eval", "evaluate a function on the grid");
    add_common(eval, cfg, raw);

    auto* identity = app.add_subcommand("identity", "residual of an identity over the grid");
    add_common(identity, cfg, raw);
    identity->add_option("--identity", cfg.identity, "identity name")->required();
    identity->add_option("--kind", cfg.kind, "hyp | trig");
    identity->add_option("--beta", raw.beta, "second exponent for product-law, re[,im]");
    identity->add_option("--t1", raw.t1, "second base point for semigroup");

    auto* converge = app.add_subcommand("converge", "error against the continuum on eps*Z");
    add_common(converge, cfg, raw);
    converge->add_option("--t", cfg.target, "evaluation point");
    converge->add_option("--eps", raw.eps, "comma-separated step sizes (default 2^-k, k=1..10)");

    auto* solve = app.add_subcommand("solve", "step a first-order dynamic equation");
    add_common(solve, cfg, raw);
    solve->add_option("--scheme", cfg.scheme, "explicit | trapezoidal | exact");
    solve->add_option("--x0", raw.x0, "initial value re[,im]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tscale::cli::kExitConfig;
    }

    if (app.got_subcommand(eval)) {
        cfg.command = tscale::cli::Command::Eval;
    } else if (app.got_subcommand(identity)) {
        cfg.command = tscale::cli::Command::Identity;
    } else if (app.got_subcommand(converge)) {
        cfg.command = tscale::cli::Command::Converge;
    } else {
        cfg.command = tscale::cli::Command::Solve;
    }

    try {
        finish_config(cfg, raw);
    } catch (const ConfigError& e) {
        std::cerr << "tscale: " << e.what() << "\n";
        return tscale::cli::kExitConfig;
    }

    if (raw.out.empty()) {
        return tscale::cli::run(cfg, std::cout, std::cerr);
    }
    std::ofstream file(raw.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        std::cerr << "tscale: cannot open " << raw.out << " for writing\n";
        return tscale::cli::kExitConfig;
    }
    return tscale::cli::run(cfg, file, std::cerr);
}
