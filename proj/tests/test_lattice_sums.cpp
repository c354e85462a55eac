#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include <besselsum/errors.hpp>
#include <besselsum/lattice_sums.hpp>

using namespace besselsum;

namespace {

double dist(Complex a, Complex b) { return std::abs(a - b); }

const DirichletCharacterFamily& triv(std::size_t n) {
    static std::vector<DirichletCharacterFamily> cache;
    while (cache.size() <= n) cache.push_back(DirichletCharacterFamily::trivial(std::max<std::size_t>(cache.size(), 1)));
    return cache[n];
}

} // namespace

TEST(LhsBesselSum, IntegerLatticeGivesExponential) {
    const Lattice z = new_lattice(IntMatrix{{1}});
    for (const double t : {0.5, 1.0, 3.0}) {
        const LhsResult r = lhs_bessel_sum(z, triv(1), {0}, Shift::zero(1), {Complex(t, 0.0)});
        EXPECT_LT(dist(r.value, std::exp(t)), 1e-12 * std::exp(t));
    }
}

TEST(LhsBesselSum, EvenLatticeOddShiftGivesSinh) {
    const Lattice two = new_lattice(IntMatrix{{2}});
    for (const double t : {0.5, 2.0}) {
        const LhsResult r = lhs_bessel_sum(two, triv(1), {1}, Shift::zero(1), {Complex(t, 0.0)});
        EXPECT_LT(dist(r.value, std::sinh(t)), 1e-12 * std::exp(t));
    }
}

TEST(LhsBesselSum, ZeroTimePicksOneTerm) {
    const Lattice l = new_lattice(IntMatrix{{2, 1}, {0, 3}});
    const LhsResult r = lhs_bessel_sum(l, triv(2), {0, 0}, Shift::zero(2), {Complex(0.0), Complex(0.0)});
    EXPECT_LT(dist(r.value, 1.0), 1e-15);
    const LhsResult off = lhs_bessel_sum(l, triv(2), {1, 0}, Shift::zero(2), {Complex(0.0), Complex(0.0)});
    EXPECT_LT(std::abs(off.value), 1e-15);
}

TEST(RhsDualSum, ClosedForms) {
    const Complex t(1.3, 0.0);
    for (std::int64_t m = 1; m <= 5; ++m) {
        for (std::int64_t x = -2; x <= 2; ++x) {
            Complex expected = 0.0;
            for (std::int64_t j = 0; j < m; ++j)
                expected += std::exp(t * std::cos(2.0 * std::numbers::pi * j / m)) *
                            std::exp(Complex(0.0, 2.0 * std::numbers::pi * x * j / m));
            expected /= static_cast<double>(m);
            EXPECT_LT(dist(rhs_dual_sum(new_lattice(IntMatrix{{m}}), triv(1), {x}, Shift::zero(1), {t}), expected), 1e-12);
        }
    }
    const std::vector<Complex> ts = {0.4, 1.1, 2.0};
    const Complex prod = std::exp(ts[0] + ts[1] + ts[2]);
    EXPECT_LT(dist(rhs_dual_sum(new_lattice(IntMatrix::identity(3)), triv(3), {0, 0, 0}, Shift::zero(3), ts), prod),
              1e-12 * std::abs(prod));
}

TEST(RhsDualSum, OneDimensionalCharacterClosedForm) {
    const DirichletCharacter chi = kronecker_character(12);
    const Complex g = gauss_sum(chi);
    const double t = 2.0;
    Complex sum = 0.0;
    for (std::int64_t j = -6; j <= 6; ++j) {
        const double w = std::abs(j) == 6 ? 0.5 : 1.0;
        sum += w * chi(j) * std::exp(t * std::cos(std::numbers::pi * j / 6.0));
    }
    const Complex expected = g / 12.0 * sum;
    const Complex rhs =
        rhs_dual_sum(new_lattice(IntMatrix{{12}}), DirichletCharacterFamily(chi, 1), {0}, Shift::zero(1), {Complex(t)});
    EXPECT_LT(dist(rhs, expected), 1e-12);
}

TEST(RhsDualSum, TrivialRealPositive) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        IntMatrix a(2, 2);
        do {
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) a(i, j) = static_cast<std::int64_t>(rng() % 7) - 3;
        } while (a.to_rational().determinant() == 0);
        const Complex r = rhs_dual_sum(new_lattice(a), triv(2), {0, 0}, Shift::zero(2), {Complex(0.7), Complex(1.9)});
        EXPECT_GT(r.real(), 0.0);
        EXPECT_LT(std::abs(r.imag()), 1e-13 * r.real());
    }
}

TEST(VerifyIdentity, Examples) {
    const IdentityReport z = verify_identity(new_lattice(IntMatrix{{1}}), triv(1), {0}, Shift::zero(1), {Complex(1.0)});
    EXPECT_LT(z.abs_residual, 1e-12);

    SumOptions so;
    so.tolerance = 1e-9;
    const IdentityReport skew = verify_identity(new_lattice(IntMatrix{{2, 1}, {0, 3}}), triv(2), {1, 0}, Shift::zero(2),
                                                {Complex(0.7), Complex(1.3)}, so);
    EXPECT_TRUE(skew.passed());
    EXPECT_LT(skew.abs_residual, 1e-9);

    const IdentityReport chi12 = verify_identity(new_lattice(IntMatrix{{12}}),
                                                 DirichletCharacterFamily(kronecker_character(12), 1), {0},
                                                 Shift::zero(1), {Complex(2.0)}, so);
    EXPECT_TRUE(chi12.passed());
    EXPECT_LT(chi12.abs_residual, 1e-9);
    EXPECT_TRUE(chi12.guaranteed);
}

TEST(VerifyIdentity, RandomLatticesWithShiftsAndCharacters) {
    std::mt19937_64 rng(42);
    const std::vector<std::pair<std::int64_t, DirichletCharacter>> chars = {
        {1, principal_character(1)}, {3, kronecker_character(-3)}, {4, kronecker_character(-4)}};
    for (int trial = 0; trial < 24; ++trial) {
        const auto& [q, chi] = chars[static_cast<std::size_t>(trial) % chars.size()];
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 2);
        IntMatrix a(n, n);
        do {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) a(i, j) = q * (static_cast<std::int64_t>(rng() % 5) - 2);
        } while (a.to_rational().determinant() == 0 || std::abs(a.to_rational().determinant().numerator()) > 150);
        IntVector x(n);
        RationalVector y(n);
        std::vector<Complex> t(n);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = static_cast<std::int64_t>(rng() % 7) - 3;
            y[j] = Rational(static_cast<std::int64_t>(rng() % 17) - 8, 1 + static_cast<std::int64_t>(rng() % 8));
            t[j] = Complex(0.2 + static_cast<double>(rng() % 20) / 10.0, static_cast<double>(rng() % 5) / 10.0);
        }
        const IdentityReport r =
            verify_identity(new_lattice(a), DirichletCharacterFamily(chi, n), x, Shift::exact(y), t);
        EXPECT_TRUE(r.passed()) << "trial " << trial << " residual " << r.abs_residual;
    }
}

TEST(VerifyIdentity, HalfIntegerShiftOnBoxFace) {
    // y = 1/2 puts dual points of 2Z on the box boundary
    const Lattice two = new_lattice(IntMatrix{{2}});
    const IdentityReport r =
        verify_identity(two, triv(1), {1}, Shift::exact({Rational(1, 2)}), {Complex(1.5, 0.2)});
    EXPECT_TRUE(r.passed());
}

TEST(VerifyIdentity, ApproximateShiftNearFaceIsAmbiguous) {
    const Lattice two = new_lattice(IntMatrix{{2}});
    EXPECT_THROW(rhs_dual_sum(two, triv(1), {0}, Shift::approximate({0.5}), {Complex(1.0)}), BoundaryAmbiguity);
    EXPECT_NO_THROW(rhs_dual_sum(two, triv(1), {0}, Shift::approximate({0.3}), {Complex(1.0)}));
}

TEST(VerifyIdentity, HypothesisChecks) {
    const DirichletCharacterFamily chi12(kronecker_character(12), 1);
    EXPECT_THROW(verify_identity(new_lattice(IntMatrix{{6}}), chi12, {0}, Shift::zero(1), {Complex(1.0)}),
                 DivisibilityViolation);
    EXPECT_THROW(verify_identity(new_lattice(RationalMatrix{{Rational(1, 2)}}), triv(1), {0}, Shift::zero(1),
                                 {Complex(1.0)}),
                 NotIntegral);
    const DirichletCharacterFamily principal(principal_character(3), 1);
    EXPECT_THROW(verify_identity(new_lattice(IntMatrix{{3}}), principal, {0}, Shift::zero(1), {Complex(1.0)}),
                 NotPrimitive);
    SumOptions relaxed;
    relaxed.allow_imprimitive = true;
    const IdentityReport r =
        verify_identity(new_lattice(IntMatrix{{3}}), principal, {0}, Shift::zero(1), {Complex(1.0)}, relaxed);
    EXPECT_FALSE(r.guaranteed);
}

TEST(VerifyIdentity, ThreadCountIndependence) {
    const Lattice l = new_lattice(IntMatrix{{2, 1, 0}, {0, 3, 1}, {1, 0, 2}});
    const std::vector<Complex> t = {Complex(2.0), Complex(1.0, 0.5), Complex(0.5)};
    SumOptions one;
    SumOptions four;
    four.threads = 4;
    const LhsResult a = lhs_bessel_sum(l, triv(3), {1, -1, 2}, Shift::exact({Rational(1, 3), 0, Rational(-1, 4)}), t, one);
    const LhsResult a2 = lhs_bessel_sum(l, triv(3), {1, -1, 2}, Shift::exact({Rational(1, 3), 0, Rational(-1, 4)}), t, one);
    const LhsResult b = lhs_bessel_sum(l, triv(3), {1, -1, 2}, Shift::exact({Rational(1, 3), 0, Rational(-1, 4)}), t, four);
    EXPECT_EQ(a.value, a2.value);
    EXPECT_LT(dist(a.value, b.value), 1e-13 * std::max(1.0, std::abs(a.value)));
}

TEST(VerifyIdentity, EquivalentBasesAgree) {
    // a unimodular change of basis describes the same lattice, so the sum is reindexed only
    const Lattice a = new_lattice(IntMatrix{{2, 1}, {0, 3}});
    const Lattice b = new_lattice(IntMatrix{{2, 4}, {2, 1}});
    const std::vector<Complex> t = {Complex(1.2), Complex(0.8, -0.3)};
    const LhsResult la = lhs_bessel_sum(a, triv(2), {1, 2}, Shift::exact({Rational(1, 5), Rational(2, 3)}), t);
    const LhsResult lb = lhs_bessel_sum(b, triv(2), {1, 2}, Shift::exact({Rational(1, 5), Rational(2, 3)}), t);
    EXPECT_LT(dist(la.value, lb.value), 1e-14 * std::max(1.0, std::abs(la.value)));
}

TEST(IntegerClosedForm, Examples) {
    SumOptions so;
    so.tolerance = 1e-10;
    for (std::int64_t m = 1; m <= 8; ++m)
        for (const Complex t : {Complex(0.5), Complex(2.0), Complex(1.0, 1.0)})
            EXPECT_TRUE(verify_integer_closed_form(m, 1, t, so).passed());
}

TEST(DiscreteTorus, Examples) {
    const IdentityReport one = discrete_torus_trace({1}, Complex(1.0));
    EXPECT_LT(dist(one.lhs, 1.0), one.lhs_tail_bound + 1e-14);
    EXPECT_LT(dist(one.rhs, 1.0), 1e-14);

    SumOptions so;
    so.tolerance = 1e-10;
    EXPECT_TRUE(discrete_torus_trace({4, 6}, Complex(0.8), so).passed());

    for (const double t : {0.3, 1.0, 2.5}) {
        const IdentityReport two = discrete_torus_trace({2}, Complex(t), so);
        EXPECT_LT(dist(two.lhs, std::exp(-2 * t) * std::cosh(2 * t)), 1e-12);
        EXPECT_LT(dist(two.rhs, 0.5 * (1.0 + std::exp(-4 * t))), 1e-12);
    }
}

TEST(ProductTailBound, MonotoneInRadius) {
    double prev = 1.0;
    for (std::int64_t R = 0; R < 40; ++R) {
        const double b = product_tail_bound(R, {3.0, 5.0});
        EXPECT_LE(b, prev);
        EXPECT_GE(b, 0.0);
        prev = b;
    }
    EXPECT_LT(prev, 1e-10);
}

TEST(ScaledSums, MatchUnscaled) {
    const Lattice l = new_lattice(IntMatrix{{3, 0}, {1, 2}});
    const std::vector<Complex> t = {Complex(4.0), Complex(2.5, 1.0)};
    const ScaledSum s = lhs_bessel_sum_scaled(l, triv(2), {0, 1}, Shift::zero(2), t, 1e-16);
    const LhsResult u = lhs_bessel_sum(l, triv(2), {0, 1}, Shift::zero(2), t);
    EXPECT_NEAR(s.log_scale, 6.5, 1e-15);
    EXPECT_LT(dist(s.unscaled(), u.value), 1e-11 * std::abs(u.value));
    const ScaledSum r = rhs_dual_sum_scaled(l, triv(2), {0, 1}, Shift::zero(2), t);
    EXPECT_LT(dist(r.unscaled(), s.unscaled()), 1e-10 * std::abs(u.value));
}
