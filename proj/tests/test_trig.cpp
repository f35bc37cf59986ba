#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "tscale/errors.hpp"
#include "tscale/exponential.hpp"
#include "tscale/trig.hpp"

using namespace tscale;

namespace {

const TimeScale& integers() {
    static const TimeScale z = TimeScale::uniform(0, 1, 6);
    return z;
}

const TimeScale& mixed() {
    static const TimeScale ts({ClosedInterval{0, 1}, IsolatedPoint{1.4}, IsolatedPoint{2.0},
                               ClosedInterval{2.5, 3.5}});
    return ts;
}

Coefficient c(cplx v) { return Coefficient::constant(v); }

}  // namespace

TEST(HypTest, BaseValue) {
    for (auto fam : {TrigFamily::Hilger, TrigFamily::BohnerPeterson, TrigFamily::Cayley,
                     TrigFamily::Exact}) {
        const auto [ch, sh] = hyp(fam, integers(), c(0.7), 2.0, 2.0);
        EXPECT_EQ(ch, cplx(1.0)) << to_string(fam);
        EXPECT_EQ(sh, cplx(0.0)) << to_string(fam);
    }
}

TEST(HypTest, CayleyOnIntegers) {
    const auto [ch, sh] = hyp(TrigFamily::Cayley, integers(), c(1.0), 1.0, 0.0);
    EXPECT_NEAR(ch.real(), 5.0 / 3.0, 1e-15);
    EXPECT_NEAR(sh.real(), 4.0 / 3.0, 1e-15);
}

TEST(HypTest, BohnerPetersonAtBoundary) {
    // e_{-1} vanishes on Z
    const auto [ch, sh] = hyp(TrigFamily::BohnerPeterson, integers(), c(1.0), 1.0, 0.0);
    EXPECT_EQ(ch, cplx(1.0));
    EXPECT_EQ(sh, cplx(1.0));
}

TEST(HypTest, HilgerUsesCircleMinus) {
    // e_{ominus alpha} = 1 / e_alpha, so cosh^2 - sinh^2 = 1
    const auto [ch, sh] = hyp(TrigFamily::Hilger, mixed(), c(0.8), 3.5, 0.0);
    EXPECT_LE(oracle::rel(ch * ch - sh * sh, 1.0), 1e-13);
    const auto ep = exp_hilger(mixed(), c(0.8), 3.5, 0.0);
    EXPECT_LE(oracle::rel(ch + sh, ep), 1e-13);
}

TEST(HypTest, ExactIsContinuum) {
    const auto [ch, sh] = hyp(TrigFamily::Exact, mixed(), c(0.8), 3.5, 0.0);
    EXPECT_LE(oracle::rel(ch, std::cosh(2.8)), 1e-15);
    EXPECT_LE(oracle::rel(sh, std::sinh(2.8)), 1e-15);
}

TEST(TrigTest, Examples) {
    const auto [co, si] = trig(TrigFamily::Cayley, integers(), c(1.0), 1.0, 0.0);
    EXPECT_NEAR(co, 0.6, 1e-15);
    EXPECT_NEAR(si, 0.8, 1e-15);
    for (auto fam : {TrigFamily::Hilger, TrigFamily::BohnerPeterson, TrigFamily::Cayley,
                     TrigFamily::Exact}) {
        const auto [c0, s0] = trig(fam, mixed(), c(1.3), 1.4, 1.4);
        EXPECT_EQ(c0, 1.0) << to_string(fam);
        EXPECT_EQ(s0, 0.0) << to_string(fam);
    }
    const auto [ce, se] =
        trig(TrigFamily::Exact, TimeScale::interval(0, 1), c(std::numbers::pi), 0.5, 0.0);
    EXPECT_NEAR(ce, 0.0, 1e-16);
    EXPECT_EQ(se, 1.0);
}

TEST(TrigTest, BohnerPetersonOnIntegers) {
    // cos = Re(1 + i)^t, sin = Im(1 + i)^t
    const auto [co, si] = trig(TrigFamily::BohnerPeterson, integers(), c(1.0), 3.0, 0.0);
    const cplx p = cplx(1.0, 1.0) * cplx(1.0, 1.0) * cplx(1.0, 1.0);
    EXPECT_NEAR(co, p.real(), 1e-14);
    EXPECT_NEAR(si, p.imag(), 1e-14);
}

TEST(TrigTest, HilgerNeedsConstantFrequency) {
    const auto w = Coefficient::piecewise({}, {Polynomial{{1.0, 1.0}}});
    EXPECT_THROW(trig(TrigFamily::Hilger, mixed(), w, 1.0, 0.0), DomainError);
    const auto [co, si] = trig(TrigFamily::Hilger, mixed(), c(2.0), 2.0, 0.0);
    EXPECT_EQ(co, std::cos(4.0));
    EXPECT_EQ(si, std::sin(4.0));
}

TEST(TrigTest, RealityOfCayleyValues) {
    const auto pair = evaluate_pair(TrigFamily::Cayley, TrigKind::Trigonometric, mixed(), c(2.3),
                                    0.0, make_grid(mixed(), 0.1));
    for (std::size_t i = 0; i < pair.c.size(); ++i) {
        EXPECT_EQ(pair.c[i].imag(), 0.0);
        EXPECT_EQ(pair.s[i].imag(), 0.0);
    }
}

TEST(TrigTest, ComplexFrequencyFailsRealityCheck) {
    EXPECT_THROW(trig(TrigFamily::Cayley, integers(), c({1.0, 0.5}), 3.0, 0.0), ToleranceError);
}

TEST(PythagoreanTest, Examples) {
    const auto grid = make_grid(integers(), 1.0);
    const auto cay = pythagorean_residual(TrigFamily::Cayley, TrigKind::Trigonometric, integers(),
                                          c(1.0), 0.0, grid, 1e-12);
    EXPECT_TRUE(cay.pass());
    EXPECT_LE(cay.max_residual, 1e-15);

    const auto ex = pythagorean_residual(TrigFamily::Exact, TrigKind::Trigonometric, mixed(),
                                         c(3.0), 0.0, make_grid(mixed(), 0.1), 1e-12);
    EXPECT_LE(ex.max_residual, 1e-15);

    const auto bp = pythagorean_residual(TrigFamily::BohnerPeterson, TrigKind::Trigonometric,
                                         integers(), c(1.0), 0.0, grid, 1e-10);
    ASSERT_EQ(bp.reference.size(), grid.size());
    EXPECT_NEAR(bp.reference[1], 2.0, 1e-15);
    EXPECT_NEAR(bp.reference[3], 8.0, 1e-14);
    EXPECT_TRUE(bp.pass());
}

TEST(PythagoreanTest, MixedScaleAllFamilies) {
    const auto grid = make_grid(mixed(), 0.05);
    for (auto kind : {TrigKind::Hyperbolic, TrigKind::Trigonometric}) {
        for (auto fam : {TrigFamily::Hilger, TrigFamily::Cayley, TrigFamily::Exact}) {
            const auto r = pythagorean_residual(fam, kind, mixed(), c(1.1), 0.3, grid, 1e-12);
            EXPECT_TRUE(r.pass()) << to_string(fam) << " " << to_string(kind) << " "
                                  << r.max_residual;
        }
        const auto bp =
            pythagorean_residual(TrigFamily::BohnerPeterson, kind, mixed(), c(1.1), 0.3, grid,
                                 1e-10);
        EXPECT_TRUE(bp.pass()) << to_string(kind) << " " << bp.max_residual;
    }
}

TEST(DerivativeTest, Examples) {
    const auto grid = make_grid(integers(), 1.0);
    const auto tr = derivative_residual(TrigKind::Trigonometric, integers(), c(1.0), 0.0, grid,
                                        1e-12);
    EXPECT_TRUE(tr.pass());
    EXPECT_EQ(tr.skipped, 1u);  // the left-scattered maximum
    const auto hy = derivative_residual(TrigKind::Hyperbolic, integers(), c(1.0), 0.0, grid,
                                        1e-12);
    EXPECT_TRUE(hy.pass());
    const auto zero = derivative_residual(TrigKind::Trigonometric, integers(), c(0.0), 0.0, grid,
                                          1e-12);
    EXPECT_EQ(zero.max_residual, 0.0);
}

TEST(DerivativeTest, DensePointsNumeric) {
    const auto grid = make_grid(mixed(), 0.25);
    const auto r = derivative_residual(TrigKind::Trigonometric, mixed(), c(1.7), 0.0, grid, 1e-8);
    EXPECT_TRUE(r.pass()) << r.max_residual << " at " << r.argmax_t;
}

TEST(ExactTrigDeltaTest, Examples) {
    const auto [cd, sd] = exact_trig_delta(std::numbers::pi, 1.0, 0.0);
    EXPECT_NEAR(cd, -2.0, 1e-15);
    EXPECT_NEAR(sd, 0.0, 1e-15);
    EXPECT_EQ(exact_trig_delta(0.0, 0.5, 1.0), (std::pair<double, double>{0.0, 0.0}));
    const auto [cl, sl] = exact_trig_delta(1.0, 1e-8, 0.3);
    EXPECT_NEAR(cl, -std::sin(0.3), 1e-7);
    EXPECT_NEAR(sl, std::cos(0.3), 1e-7);
    EXPECT_THROW(exact_trig_delta(1.0, 0.0, 0.3), DomainError);
}

TEST(ExactTrigDeltaTest, MatchesForwardQuotient) {
    const double w = 1.9;
    const double m = 0.3;
    for (double t : {-1.0, 0.2, 2.5}) {
        const auto [cd, sd] = exact_trig_delta(w, m, t);
        EXPECT_NEAR(cd, (std::cos(w * (t + m)) - std::cos(w * t)) / m, 1e-14);
        EXPECT_NEAR(sd, (std::sin(w * (t + m)) - std::sin(w * t)) / m, 1e-14);
    }
}
