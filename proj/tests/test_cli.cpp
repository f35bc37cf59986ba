#include <gtest/gtest.h>

#include <locale>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "tscale/cli/commands.hpp"
#include "tscale/cli/format.hpp"
#include "tscale/cli/scale_spec.hpp"
#include "tscale/errors.hpp"

using namespace tscale;
using namespace tscale::cli;

namespace {

RunConfig config(Command cmd, std::string scale) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.scale = std::move(scale);
    return cfg;
}

int exit_of(const RunConfig& cfg, std::string* out = nullptr) {
    std::ostringstream o;
    std::ostringstream e;
    const int code = run(cfg, o, e);
    if (out) {
        *out = o.str();
    }
    return code;
}

}  // namespace

TEST(ParseScaleTest, Examples) {
    EXPECT_EQ(parse_scale("interval(0,1) + points(2)"),
              TimeScale({ClosedInterval{0, 1}, IsolatedPoint{2}}));
    EXPECT_EQ(parse_scale("uniform(0,0.5,5)"), TimeScale::points({0, 0.5, 1, 1.5, 2}));
    EXPECT_THROW(parse_scale("points(1,1)"), OverlapError);
}

TEST(ParseScaleTest, WhitespaceOrderAndMerging) {
    EXPECT_EQ(parse_scale("  points( 3 , -1 )\n+ interval(0, 1)"),
              TimeScale({IsolatedPoint{-1}, ClosedInterval{0, 1}, IsolatedPoint{3}}));
    EXPECT_EQ(parse_scale("interval(0,1)+interval(1,2)"), TimeScale::interval(0, 2));
    EXPECT_THROW(parse_scale("interval(0,2)+interval(1,3)"), OverlapError);
    EXPECT_THROW(parse_scale("interval(0,1)+points(0.5)"), OverlapError);
}

TEST(ParseScaleTest, ErrorsCarryPosition) {
    try {
        parse_scale("interval(0,1)\n + bogus(2)");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 4u);
    }
    EXPECT_THROW(parse_scale(""), ParseError);
    EXPECT_THROW(parse_scale("interval(0,1"), ParseError);
    EXPECT_THROW(parse_scale("interval(1,0)"), ParseError);
    EXPECT_THROW(parse_scale("uniform(0,0.5,2.5)"), ParseError);
    EXPECT_THROW(parse_scale("uniform(0,-1,3)"), ParseError);
    EXPECT_THROW(parse_scale("points()"), ParseError);
    EXPECT_THROW(parse_scale("points(1) +"), ParseError);
}

TEST(RenderScaleTest, RoundTrip) {
    const std::vector<TimeScale> scales{
        TimeScale::interval(-0.1, 0.7),
        TimeScale::points({0.1, 0.2, 0.30000000000000004}),
        TimeScale({ClosedInterval{0, 1}, IsolatedPoint{1.5}, IsolatedPoint{1.75},
                   ClosedInterval{2, 3}, IsolatedPoint{1e6}}),
        TimeScale::uniform(0, 1.0 / 3.0, 7),
    };
    for (const auto& ts : scales) {
        EXPECT_EQ(parse_scale(render_scale(ts)), ts) << render_scale(ts);
    }
    EXPECT_EQ(render_scale(TimeScale({ClosedInterval{0, 1}, IsolatedPoint{2}})),
              "interval(0,1) + points(2)");
}

TEST(FormatTest, Numbers) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(3.0), "3");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(1e-300), "1e-300");
    EXPECT_EQ(format_double(2.0 / 3.0), "0.66666666666666663");
    EXPECT_EQ(format_shortest(0.1), "0.1");
    EXPECT_EQ(parse_double("+2.5"), 2.5);
    EXPECT_FALSE(parse_double("2.5x"));
    EXPECT_FALSE(parse_double(""));
    EXPECT_EQ(parse_complex("1,-2"), cplx(1, -2));
    EXPECT_EQ(parse_complex("0.5"), cplx(0.5));
    EXPECT_FALSE(parse_complex("1,2,3"));
}

TEST(FormatTest, IgnoresGlobalLocale) {
    struct comma_decimal : std::numpunct<char> {
        char do_decimal_point() const override { return ','; }
    };
    const std::locale saved = std::locale::global(std::locale(std::locale::classic(),
                                                              new comma_decimal));
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(parse_double("0.5"), 0.5);
    auto cfg = config(Command::Eval, "uniform(0,0.5,2)");
    std::string out;
    EXPECT_EQ(exit_of(cfg, &out), kExitPass);
    EXPECT_EQ(out.substr(0, 17), "t,re,im\n0,1,0\n0.5");
    std::locale::global(saved);
}

TEST(EvalTest, CayleyTable) {
    auto cfg = config(Command::Eval, "uniform(0,1,4)");
    std::string out;
    EXPECT_EQ(exit_of(cfg, &out), kExitPass);
    EXPECT_EQ(out, "t,re,im\n0,1,0\n1,3.0000000000000004,0\n2,9.0000000000000018,0\n3,27,0\n");
    EXPECT_EQ(out.find('\r'), std::string::npos);
}

TEST(EvalTest, ExactZeroIsOne) {
    auto cfg = config(Command::Eval, "interval(0,1) + points(2)");
    cfg.family = "exact";
    cfg.alpha = 0.0;
    cfg.dense_step = 0.25;
    std::string out;
    EXPECT_EQ(exit_of(cfg, &out), kExitPass);
    std::istringstream rows(out);
    std::string line;
    std::getline(rows, line);
    int n = 0;
    while (std::getline(rows, line)) {
        EXPECT_EQ(line.substr(line.find(',')), ",1,0");
        ++n;
    }
    EXPECT_EQ(n, 6);
}

TEST(EvalTest, ExitCodes) {
    auto hil = config(Command::Eval, "uniform(0,1,4)");
    hil.family = "hilger";
    hil.alpha = -1.0;
    EXPECT_EQ(exit_of(hil), kExitRegressivity);
    EXPECT_EQ(exit_of(config(Command::Eval, "points(1,1)")), kExitConfig);
    EXPECT_EQ(exit_of(config(Command::Eval, "interval(0,1")), kExitConfig);
    auto fam = config(Command::Eval, "uniform(0,1,4)");
    fam.family = "laplace";
    EXPECT_EQ(exit_of(fam), kExitConfig);
    auto t0 = config(Command::Eval, "uniform(0,1,4)");
    t0.t0 = 0.5;
    EXPECT_EQ(exit_of(t0), kExitConfig);
}

TEST(EvalTest, JsonSchemaFirst) {
    auto cfg = config(Command::Eval, "uniform(0,1,3)");
    cfg.format = Format::Json;
    std::string out;
    ASSERT_EQ(exit_of(cfg, &out), kExitPass);
    EXPECT_EQ(out.rfind("{\"schema\":\"tscale/1\"", 0), 0u);
    const auto doc = nlohmann::json::parse(out);
    EXPECT_EQ(doc["family"], "cayley");
    EXPECT_EQ(doc["values"].size(), 3u);
}

TEST(IdentityTest, Examples) {
    auto py = config(Command::Identity, "uniform(0,1,11)");
    py.identity = "pythagorean";
    py.format = Format::Json;
    std::string out;
    EXPECT_EQ(exit_of(py, &out), kExitPass);
    auto doc = nlohmann::json::parse(out);
    EXPECT_TRUE(doc["pass"].get<bool>());
    EXPECT_LT(doc["max_residual"].get<double>(), 1e-12);

    auto uc = config(Command::Identity, "interval(0,1) + points(1.5,2)");
    uc.identity = "unit-circle";
    uc.alpha = 0.0;
    uc.format = Format::Json;
    EXPECT_EQ(exit_of(uc, &out), kExitPass);
    doc = nlohmann::json::parse(out);
    EXPECT_EQ(doc["max_residual"].get<double>(), 0.0);

    auto bp = config(Command::Identity, "uniform(0,1,4)");
    bp.identity = "pythagorean";
    bp.family = "bp";
    bp.tol = 1e-10;
    bp.format = Format::Json;
    EXPECT_EQ(exit_of(bp, &out), kExitPass);
    doc = nlohmann::json::parse(out);
    ASSERT_TRUE(doc.contains("deformation"));
    EXPECT_EQ(doc["deformation"][2]["value"].get<double>(), 4.0);
}

TEST(IdentityTest, AllNamesRun) {
    for (const char* name : {"pythagorean", "semigroup", "sigma-shift", "product-law",
                             "unit-circle", "oscillator-cayley", "oscillator-exact", "delbis",
                             "derivative", "inverse", "conjugation", "doubleprime-twice"}) {
        auto cfg = config(Command::Identity, "uniform(0,0.5,12)");
        cfg.identity = name;
        cfg.alpha = 0.7;
        cfg.tol = 1e-10;
        if (std::string(name) == "oscillator-exact" || std::string(name) == "delbis" ||
            std::string(name) == "doubleprime-twice") {
            cfg.family = "exact";
        }
        EXPECT_EQ(exit_of(cfg), kExitPass) << name;
    }
    auto bad = config(Command::Identity, "uniform(0,1,4)");
    bad.identity = "fermat";
    EXPECT_EQ(exit_of(bad), kExitConfig);
}

TEST(IdentityTest, FailureExitsOne) {
    auto cfg = config(Command::Identity, "uniform(0,1,6)");
    cfg.identity = "pythagorean";
    cfg.family = "bp";
    cfg.tol = 1e-300;
    cfg.alpha = 0.3;
    EXPECT_EQ(exit_of(cfg), kExitIdentityFailed);
}

TEST(ConvergeTest, Slopes) {
    const auto slope_of = [](const std::string& family) {
        RunConfig cfg;
        cfg.command = Command::Converge;
        cfg.family = family;
        cfg.format = Format::Json;
        std::string out;
        EXPECT_EQ(exit_of(cfg, &out), kExitPass);
        return nlohmann::json::parse(out);
    };
    const auto cay = slope_of("cayley");
    EXPECT_GE(cay["fitted_slope"].get<double>(), 1.9);
    EXPECT_LE(cay["fitted_slope"].get<double>(), 2.1);
    const auto hil = slope_of("hilger");
    EXPECT_GE(hil["fitted_slope"].get<double>(), 0.9);
    EXPECT_LE(hil["fitted_slope"].get<double>(), 1.1);
    const auto ex = slope_of("exact");
    for (const auto& row : ex["rows"]) {
        EXPECT_LE(row["error"].get<double>(), 1e-13);
    }
}

TEST(ConvergeTest, FittedSlope) {
    const std::vector<double> eps{0.5, 0.25, 0.125};
    EXPECT_NEAR(fitted_slope(eps, {0.25, 0.0625, 0.015625}), 2.0, 1e-14);
    EXPECT_TRUE(std::isnan(fitted_slope(eps, {0.0, 0.0, 1.0})));
}

TEST(SolveCommandTest, Trapezoidal) {
    auto cfg = config(Command::Solve, "uniform(0,1,4)");
    std::string out;
    EXPECT_EQ(exit_of(cfg, &out), kExitPass);
    EXPECT_EQ(out, "t,re,im\n0,1,0\n1,3,0\n2,9,0\n3,27,0\n");
    cfg.scheme = "rk4";
    EXPECT_EQ(exit_of(cfg), kExitConfig);
}

TEST(DeterminismTest, ByteIdenticalOutput) {
    for (auto cmd : {Command::Eval, Command::Identity, Command::Solve}) {
        auto cfg = config(cmd, "interval(0,1) + points(1.2,1.7) + interval(2,2.5)");
        cfg.identity = "pythagorean";
        cfg.alpha = {0.4, 0.0};
        cfg.dense_step = 0.05;
        for (auto fmt : {Format::Csv, Format::Json}) {
            cfg.format = fmt;
            std::string a;
            std::string b;
            exit_of(cfg, &a);
            exit_of(cfg, &b);
            EXPECT_FALSE(a.empty());
            EXPECT_EQ(a, b);
        }
    }
}
