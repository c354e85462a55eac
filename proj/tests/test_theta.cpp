#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <besselsum/errors.hpp>
#include <besselsum/special_functions.hpp>
#include <besselsum/theta.hpp>

using namespace besselsum;

namespace {

constexpr double kPi = std::numbers::pi;

double dist(Complex a, Complex b) { return std::abs(a - b); }

} // namespace

TEST(ThetaLattice, IntegerLattice) {
    EXPECT_NEAR(theta_lattice(new_lattice(IntMatrix{{1}}), 0.01).value.real(), 2.820947917817135738, 1e-14);
    EXPECT_NEAR(theta_lattice(new_lattice(IntMatrix{{1}}), 0.1).value.real(), 1.0385928831070669073, 1e-14);
    EXPECT_NEAR(theta_lattice(new_lattice(IntMatrix{{1}}), 5.0).value.real(), 1.0, 1e-15);
}

TEST(ThetaLattice, PoissonDuality) {
    const double t = 1.0 / (16.0 * kPi * kPi);
    const double lhs = theta_lattice(new_lattice(IntMatrix{{1}}), t).value.real();
    double direct = 0.0;
    for (int r = -60; r <= 60; ++r) direct += std::exp(-r * r / 4.0);
    EXPECT_NEAR(lhs, direct, 1e-12);
    EXPECT_NEAR(lhs, std::sqrt(4 * kPi) * theta_lattice(new_lattice(IntMatrix{{1}}), 1.0).value.real(), 1e-12);

    for (const IntMatrix& a : {IntMatrix{{2}}, IntMatrix{{2, 1}, {0, 3}}}) {
        const Lattice g = new_lattice(a);
        const Lattice d = dual_lattice(g);
        const double n = static_cast<double>(a.rows());
        for (const double s : {0.01, 0.05, 0.3}) {
            const double lhs2 = to_double(g.covolume()) * std::pow(4 * kPi * s, -n / 2) *
                                theta_lattice(g, 1.0 / (16 * kPi * kPi * s)).value.real();
            EXPECT_NEAR(lhs2, theta_lattice(d, s).value.real(), 1e-12);
        }
    }
}

TEST(ThetaLattice, TailBoundBracketsRefinement) {
    const Lattice g = new_lattice(IntMatrix{{1, 1}, {0, 2}});
    const ThetaValue v = theta_lattice(g, 0.002);
    double direct = 0.0;
    for (int a = -80; a <= 80; ++a)
        for (int b = -80; b <= 80; ++b) {
            const double x = a;
            const double y = a + 2.0 * b;
            direct += std::exp(-4 * kPi * kPi * (x * x + y * y) * 0.002);
        }
    EXPECT_LE(std::abs(v.value.real() - direct), v.tail_bound + 1e-13);
}

TEST(ThetaCharSides, Examples) {
    const IdentityReport z = theta_char_sides(new_lattice(IntMatrix{{1}}), DirichletCharacterFamily::trivial(1), {0},
                                              Shift::zero(1), {1.0 / (4 * kPi * kPi)});
    EXPECT_LT(z.abs_residual, 1e-11);
    const IdentityReport c = theta_char_sides(new_lattice(IntMatrix{{12}}),
                                              DirichletCharacterFamily(kronecker_character(12), 1), {0},
                                              Shift::zero(1), {0.7});
    EXPECT_LT(c.abs_residual, 1e-11);
    const IdentityReport skew = theta_char_sides(new_lattice(IntMatrix{{2, 1}, {0, 3}}),
                                                 DirichletCharacterFamily::trivial(2), {1, -2},
                                                 Shift::exact({Rational(1, 3), Rational(-1, 2)}), {0.4, 1.1});
    EXPECT_LT(skew.abs_residual, 1e-11);
}

TEST(ThetaCharSides, RejectsNonPositiveTime) {
    EXPECT_THROW(theta_char_sides(new_lattice(IntMatrix{{1}}), DirichletCharacterFamily::trivial(1), {0},
                                  Shift::zero(1), {0.0}),
                 std::invalid_argument);
}

TEST(ContinuumLimit, Schedule) {
    ContinuumLimitSchedule bad{{8, 8}, new_lattice(IntMatrix{{1}}), DirichletCharacterFamily::trivial(1), {0},
                               Shift::zero(1), {0.5}};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad.L_values = {0, 4};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(ContinuumLimit, ResidualsDecrease) {
    ContinuumLimitSchedule s{{8, 16, 32, 64}, new_lattice(IntMatrix{{1}}), DirichletCharacterFamily::trivial(1), {0},
                             Shift::zero(1), {0.5}};
    const auto rows = continuum_limit_probe(s);
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].limit_residual, rows[i - 1].limit_residual);
    EXPECT_LT(rows.back().limit_residual, rows.front().limit_residual);
    for (const auto& r : rows) EXPECT_LT(r.identity_residual, 1e-9 + r.lhs_tail_bound);
}

TEST(ContinuumLimit, SingleTermEstimate) {
    const double u = 8.0;
    const double t = 0.5;
    const double scaled = u * bessel_i_scaled(0, 2 * u * u * t);
    const double limit = 1.0 / std::sqrt(4 * kPi * t);
    EXPECT_LT(std::abs(scaled - limit) / limit, 0.02);
}

TEST(DedekindEta, FrozenValues) {
    EXPECT_NEAR(std::abs(dedekind_eta_series(Complex(0, 1)).value - 0.768225422326056659), 0.0, 1e-15);
    const double closed = std::tgamma(0.25) / (2 * std::pow(kPi, 0.75));
    EXPECT_NEAR(dedekind_eta_product(Complex(0, 1)).value.real(), closed, 1e-15);
    EXPECT_LT(dist(dedekind_eta_series({0.3, 1.7}).value, {0.63881679610729002589, 0.050261931954484888725}), 1e-15);
    EXPECT_LT(dist(dedekind_eta_product({0.5, 2.0}).value, {0.5873189608686416709, 0.077322008078790687252}), 1e-15);
}

TEST(DedekindEta, RoutesAndTransformation) {
    for (const Complex tau : {Complex(0, 1), Complex(0.5, 2.0), Complex(0.3, 1.7), Complex(-0.45, 0.9)}) {
        const EtaRoutes r = dedekind_eta(tau);
        EXPECT_LT(r.route_difference, 1e-12);
        EXPECT_TRUE(eta_transformation_check(tau, 1e-12).passed());
        const Complex shifted = dedekind_eta(tau + 1.0).series.value;
        EXPECT_LT(dist(shifted, std::exp(Complex(0, kPi / 12)) * r.series.value), 1e-12);
    }
    EXPECT_THROW(dedekind_eta_series(Complex(0.3, -1.0)), std::invalid_argument);
}

TEST(JacobiTheta, IdentityAndModular) {
    for (const double t : {0.1, 0.25, 1.0, 5.0}) {
        EXPECT_TRUE(jacobi_theta_identity_check(t).passed()) << t;
        EXPECT_TRUE(jacobi_theta_modular_check(t).passed()) << t;
    }
    EXPECT_LT(jacobi_theta_identity_check(0.25).abs_residual, 1e-13);
    const IdentityReport large = jacobi_theta_identity_check(5.0);
    EXPECT_LT(std::abs(large.rhs - 0.5), 1e-10);
}

TEST(JacobiTheta, DiscretePrecursorApproachesLhs) {
    const double t = 0.25;
    const double lhs = jacobi_theta_identity_check(t).lhs.real();
    double prev = std::abs(jacobi_discrete_precursor(1, t) - lhs);
    for (const std::int64_t L : {2, 4, 8, 16}) {
        const double d = std::abs(jacobi_discrete_precursor(L, t) - lhs);
        EXPECT_LT(d, prev) << L;
        prev = d;
    }
}
