#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tscale/errors.hpp"
#include "tscale/transforms.hpp"

using namespace tscale;

namespace {

constexpr double tol = 1e-14;
constexpr cplx I{0.0, 1.0};

void expect_near(cplx got, cplx want, double eps = tol) {
    EXPECT_NEAR(got.real(), want.real(), eps);
    EXPECT_NEAR(got.imag(), want.imag(), eps);
}

}  // namespace

TEST(XiTest, Examples) {
    EXPECT_EQ(xi(0.0, {3, 2}), cplx(3, 2));
    expect_near(xi(1.0, 1.0), std::log(2.0));
    EXPECT_THROW(xi(1.0, -1.0), SingularError);
}

TEST(XiTest, SmallArgumentKeepsDigits) {
    // log1p accuracy: xi_h(z) -> z as h -> 0
    const double h = 1e-10;
    expect_near(xi(h, {0.3, -0.2}), cplx(0.3, -0.2) - 0.5 * h * cplx(0.3, -0.2) * cplx(0.3, -0.2),
                1e-15);
}

TEST(XiTest, BranchCutFromAbove) {
    // 1 + zh on the negative real axis
    EXPECT_NEAR(xi(1.0, cplx(-3.0, -0.0)).imag(), std::numbers::pi, tol);
}

TEST(ZetaTest, Examples) {
    EXPECT_EQ(zeta(0.0, I), I);
    expect_near(zeta(1.0, 1.0), std::log(3.0));
    EXPECT_THROW(zeta(1.0, 2.0), SingularError);
    EXPECT_THROW(zeta(1.0, -2.0), SingularError);
}

TEST(ZetaTest, SeriesBranchIsContinuous) {
    // either side of the |hz| = 1e-4 switch, against the atanh series to h^6
    const cplx z{0.7, 0.4};
    for (double h : {1.2e-4, 1.3e-4}) {
        const cplx hz2 = h * h * z * z;
        const cplx series = z * (1.0 + hz2 / 12.0 + hz2 * hz2 / 80.0 + hz2 * hz2 * hz2 / 448.0);
        expect_near(zeta(h, z), series, 1e-15);
    }
}

TEST(ZetaInvTest, Examples) {
    EXPECT_EQ(zeta_inv(0.0, 5.0), cplx(5.0));
    expect_near(zeta_inv(1.0, I * (std::numbers::pi / 2)), 2.0 * I);
    expect_near(zeta_inv(2.0, std::log(3.0) / 2.0), 0.5);
}

TEST(ZetaInvTest, RoundTrip) {
    for (double h : {0.1, 0.5, 1.0, 2.0}) {
        const cplx w{0.3, -0.7};
        expect_near(zeta(h, zeta_inv(h, w)), w, 1e-13);
    }
}

TEST(CayleyTest, Examples) {
    EXPECT_EQ(cayley(0.0, 0.7), cplx(1.0));
    expect_near(cayley(1.0, 0.5), 3.0);
    expect_near(cayley(I, 0.5), {0.6, 0.8});
    EXPECT_THROW(cayley(2.0, 0.5), SingularError);
}

TEST(CayleyTest, ExponentOfZetaIsCayley) {
    const cplx z{0.4, 1.1};
    for (double h : {0.25, 1.0}) {
        expect_near(std::exp(h * zeta(h, z)), cayley(z, 0.5 * h), 1e-14);
    }
}

TEST(CirclePlusTest, HilgerExamples) {
    EXPECT_EQ(oplus_mu(0.0, {1, 2}, {3, -1}), cplx(4, 1));
    EXPECT_EQ(oplus_mu(1.0, 1.0, 1.0), cplx(3.0));
    EXPECT_EQ(oplus_mu(1.0, 1.0, -0.5), cplx(0.0));
    EXPECT_EQ(ominus_mu(1.0, 1.0), cplx(-0.5));
}

TEST(CirclePlusTest, CayleyExamples) {
    EXPECT_EQ(oplus_cayley(0.0, 2.0, 5.0), cplx(7.0));
    EXPECT_EQ(oplus_cayley(2.0, 1.0, 1.0), cplx(1.0));
    EXPECT_EQ(oplus_cayley(1.0, 1.0, -1.0), cplx(0.0));
    // mu^2 a b = -4
    EXPECT_THROW(oplus_cayley(1.0, 2.0, -2.0), SingularError);
}

TEST(BetaAlphaTest, Examples) {
    EXPECT_EQ(beta_of_alpha(0.0, {1, 1}), cplx(1, 1));
    EXPECT_EQ(beta_of_alpha(1.0, 1.0), cplx(2.0));
    EXPECT_EQ(beta_of_alpha(1.0, -2.0), cplx(-1.0));
    EXPECT_THROW(beta_of_alpha(1.0, 2.0), SingularError);
    EXPECT_EQ(alpha_of_beta(0.0, 4.0), cplx(4.0));
    EXPECT_EQ(alpha_of_beta(1.0, 2.0), cplx(1.0));
    EXPECT_THROW(alpha_of_beta(1.0, -2.0), SingularError);
}

TEST(CoefficientTest, Constant) {
    const auto a = Coefficient::constant({1, 2});
    EXPECT_TRUE(a.is_constant());
    EXPECT_EQ(a(123.0), cplx(1, 2));
    EXPECT_EQ(a.scaled(I).constant_value(), cplx(-2, 1));
    EXPECT_EQ(a.conjugated().constant_value(), cplx(1, -2));
}

TEST(CoefficientTest, Piecewise) {
    // t on (-inf, 1), 5 - t^2 on [1, inf)
    const auto a = Coefficient::piecewise({1.0}, {Polynomial{{0.0, 1.0}}, Polynomial{{5.0, 0.0, -1.0}}});
    EXPECT_FALSE(a.is_constant());
    EXPECT_THROW(a.constant_value(), DomainError);
    EXPECT_EQ(a(0.5), cplx(0.5));
    EXPECT_EQ(a(1.0), cplx(4.0));
    EXPECT_EQ(a(2.0), cplx(1.0));
    EXPECT_EQ(a.scaled(2.0)(2.0), cplx(2.0));
    EXPECT_THROW(Coefficient::piecewise({1.0}, {Polynomial{{1.0}}}), DomainError);
}

TEST(CoefficientTest, Tabulated) {
    const auto a = Coefficient::tabulated({0.0, 1.0, 3.0}, {0.0, 2.0, cplx(2.0, 4.0)}, false);
    EXPECT_FALSE(a.rd_continuous());
    EXPECT_EQ(a(0.5), cplx(1.0));
    EXPECT_EQ(a(2.0), cplx(2.0, 2.0));
    EXPECT_EQ(a(3.0), cplx(2.0, 4.0));
    EXPECT_THROW(a(3.5), DomainError);
    EXPECT_EQ(a.conjugated()(3.0), cplx(2.0, -4.0));
}

TEST(RegressivityTest, Examples) {
    const auto z = TimeScale::uniform(0, 1, 5);
    const auto cay = check_regressivity(RegressivityKind::CayleyRegressive, z,
                                        Coefficient::constant(2.0), make_grid(z, 1.0));
    EXPECT_FALSE(cay.ok);
    EXPECT_EQ(cay.first_violation, 0.0);

    const auto fine = TimeScale::uniform(0, 0.1, 11);
    EXPECT_TRUE(check_regressivity(RegressivityKind::PositivelyRegressive, fine,
                                   Coefficient::constant(1.0), make_grid(fine, 1.0))
                    .ok);

    const auto hil = check_regressivity(RegressivityKind::MuRegressive, z,
                                        Coefficient::constant(-1.0), make_grid(z, 1.0));
    EXPECT_FALSE(hil.ok);
    EXPECT_EQ(hil.first_violation, 0.0);
}

TEST(RegressivityTest, Predicates) {
    EXPECT_FALSE(is_regressive(RegressivityKind::MuRegressive, 1.0, -1.0 + 1e-10));
    EXPECT_TRUE(is_regressive(RegressivityKind::MuRegressive, 1.0, -1.0 + 1e-8));
    EXPECT_FALSE(is_regressive(RegressivityKind::CayleyRegressive, 0.5, -4.0));
    EXPECT_TRUE(is_regressive(RegressivityKind::CayleyRegressive, 0.5, {4.0, 0.1}));
    EXPECT_FALSE(is_regressive(RegressivityKind::PositivelyRegressive, 1.0, {0.5, 0.1}));
    EXPECT_FALSE(is_regressive(RegressivityKind::PositivelyRegressive, 1.0, -2.0));
    // every predicate holds at dense points
    EXPECT_TRUE(is_regressive(RegressivityKind::CayleyRegressive, 0.0, 1e9));
}

TEST(RegressivityTest, RequireThrowsAtFirstViolation) {
    const auto ts = TimeScale::points({0.0, 0.5, 1.0, 2.0, 3.0});
    try {
        require_regressive(RegressivityKind::CayleyRegressive, ts, Coefficient::constant(2.0),
                           0.0, 3.0);
        FAIL() << "expected RegressivityError";
    } catch (const RegressivityError& e) {
        EXPECT_EQ(e.where(), 1.0);
    }
}
