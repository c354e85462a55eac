#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <besselsum/errors.hpp>
#include <besselsum/special_functions.hpp>
#include <besselsum/summation.hpp>

using namespace besselsum;

namespace {

// Σ_{k<terms} (t/2)^{2k+ν} / (k! (k+ν)!) in exact rationals.
double exact_series(int order, int t_num, int t_den, int terms) {
    using boost::multiprecision::cpp_rational;
    const cpp_rational half_t(t_num, 2 * t_den);
    cpp_rational term = 1;
    for (int j = 1; j <= order; ++j) term *= half_t / j;
    cpp_rational sum = 0;
    for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= half_t * half_t / ((k + 1) * (k + 1 + order));
    }
    return static_cast<double>(sum);
}

} // namespace

TEST(BesselIInt, ZeroArgument) {
    EXPECT_EQ(bessel_i_int(0, 0.0), Complex(1.0, 0.0));
    EXPECT_EQ(bessel_i_int(3, 0.0), Complex(0.0, 0.0));
    EXPECT_EQ(bessel_i_int(-3, 0.0), Complex(0.0, 0.0));
}

TEST(BesselIInt, MatchesExactRationalSeries) {
    EXPECT_NEAR(bessel_i_int(1, 2.0).real(), exact_series(1, 2, 1, 50), 1e-13);
    EXPECT_NEAR(bessel_i_int(4, 1.5).real(), exact_series(4, 3, 2, 50), 1e-13);
    EXPECT_NEAR(bessel_i_int(0, 0.25).real(), exact_series(0, 1, 4, 50), 1e-13);
}

TEST(BesselIInt, FrozenReferenceValues) {
    struct Case {
        std::int64_t k;
        Complex t;
        Complex expected;
    };
    const Case cases[] = {
        {0, {1.0, 0.0}, {1.2660658777520083356, 0.0}},
        {3, {2.5, 0.0}, {0.47437040877803558955, 0.0}},
        {10, {7.0, 0.0}, {0.2209800519276605704, 0.0}},
        {2, {1.5, 0.5}, {0.26625452726528195259, 0.25487418971422738808}},
        {4, {-2.0, 3.0}, {-0.0556996956718211653, 0.34831144763600176719}},
        {1, {0.0, 5.0}, {0.0, -0.32757913759146522204}},
    };
    for (const auto& c : cases) {
        const Complex v = bessel_i_int(c.k, c.t);
        EXPECT_NEAR(std::abs(v - c.expected), 0.0, 1e-13 * std::max(1.0, std::abs(c.expected)))
            << "k=" << c.k << " t=" << c.t;
    }
    // large complex argument, compared relative to e^{|Re t|}
    const Complex big = bessel_i_int(7, {30.0, -20.0});
    const Complex expected(131562252607.90190385, -380820307512.16920296);
    EXPECT_LT(std::abs(big - expected) / std::exp(30.0), 1e-12);
}

TEST(BesselIInt, NegativeOrderSymmetry) {
    for (std::int64_t k = 0; k < 8; ++k) {
        const Complex t(1.3, -0.4);
        EXPECT_EQ(bessel_i_int(k, t), bessel_i_int(-k, t));
    }
}

TEST(BesselIScaled, FrozenLargeArgument) {
    EXPECT_NEAR(bessel_i_scaled(0, 1000.0), 0.012617240455891256586, 1e-15);
    EXPECT_NEAR(bessel_i_scaled(5, 1000.0), 0.01246042894076886294, 1e-15);
    EXPECT_NEAR(bessel_i_scaled(100, 1000.0), 0.000085155875815481560663, 1e-17);
    EXPECT_NEAR(bessel_i_scaled(0, 800.0), 0.014106945005869183979, 1e-15);
    EXPECT_NEAR(bessel_i_scaled(40, 2000.0), 0.0059795261708903902624, 1e-15);
}

TEST(BesselIScaled, CrossRouteAtModerateArgument) {
    EXPECT_NEAR(bessel_i_scaled(5, 100.0), std::exp(-100.0) * bessel_i_int(5, 100.0).real(), 1e-12);
    EXPECT_NEAR(detail::scaled_series(3, 50.0, 20000), detail::scaled_miller(3, 50.0), 1e-13);
}

TEST(BesselIScaled, CjkBound) {
    for (const double t : {0.5, 3.0, 40.0, 900.0}) {
        for (const std::int64_t k : {1, 2, 5, 20, 100}) {
            const double lhs = std::sqrt(t) * bessel_i_scaled(k, t);
            EXPECT_LE(lhs, std::pow(1.0 + static_cast<double>(k) / t, -static_cast<double>(k) / 2.0) * (1 + 1e-12));
            EXPECT_LE(lhs, cjk_bound(k, t) * (1 + 1e-12));
        }
    }
}

TEST(BesselIScaled, TableMatchesPointwise) {
    for (const double t : {0.0, 0.7, 12.0, 750.0}) {
        const auto table = bessel_i_scaled_table(t, 30);
        ASSERT_EQ(table.size(), 31u);
        for (std::int64_t k = 0; k <= 30; ++k) EXPECT_NEAR(table[static_cast<std::size_t>(k)], bessel_i_scaled(k, t), 1e-14);
    }
}

TEST(BesselIScaled, SumsToOne) {
    for (const double t : {0.3, 5.0, 200.0}) {
        const std::int64_t R = bessel_truncation_radius(t, 1e-16);
        ASSERT_GT(R, 0);
        const auto table = bessel_i_scaled_table(t, R);
        CompensatedSum<double> acc;
        acc.add(table[0]);
        for (std::int64_t k = 1; k <= R; ++k) acc.add(2.0 * table[static_cast<std::size_t>(k)]);
        EXPECT_NEAR(acc.value(), 1.0, 1e-13);
    }
}

TEST(TailBound, DominatesActualTail) {
    for (const double s : {0.5, 4.0, 60.0}) {
        const auto table = bessel_i_scaled_table(s, 400);
        for (const std::int64_t R : {0, 1, 3, 10, 30}) {
            double tail = 0.0;
            for (std::int64_t k = R + 1; k <= 400; ++k) tail += 2.0 * table[static_cast<std::size_t>(k)];
            EXPECT_GE(scaled_bessel_tail_bound(R, s), tail) << "s=" << s << " R=" << R;
        }
    }
}

TEST(TailBound, RadiusIsMonotoneAndMeetsTarget) {
    std::int64_t prev = 0;
    for (const double s : {1.0, 10.0, 100.0, 1000.0}) {
        const std::int64_t R = bessel_truncation_radius(s, 1e-14);
        EXPECT_GE(R, prev);
        EXPECT_LE(scaled_bessel_tail_bound(R, s), 1e-14);
        prev = R;
    }
    EXPECT_EQ(bessel_truncation_radius(1e6, 1e-14, 10), -1);
}

TEST(BesselITilde, ZeroAndCrossCheck) {
    EXPECT_NEAR(std::abs(bessel_i_tilde(0.0, 0.0) - 1.0), 0.0, 1e-14);
    const Complex t(1.5, 0.5);
    EXPECT_LT(std::abs(bessel_i_tilde(2.0, t) - bessel_i_int(2, t)), 1e-11);
    for (const double x : {0.5, 1.25, 3.0}) EXPECT_EQ(bessel_i_tilde(x, t), bessel_i_tilde(-x, t));
}

TEST(AFunction, ClosedForms) {
    for (const double tr : {0.3, 1.0, 2.5}) {
        const Complex t(tr, 0.0);
        EXPECT_NEAR(std::abs(a_function(0, t, 1) - std::exp(t)), 0.0, 1e-13 * std::exp(tr));
        EXPECT_NEAR(std::abs(a_function(0, t, 2) - std::cosh(t)), 0.0, 1e-13 * std::exp(tr));
        EXPECT_NEAR(std::abs(a_function(1, t, 2) - std::sinh(t)), 0.0, 1e-13 * std::exp(tr));
    }
}

TEST(AFunction, DirectSumOracle) {
    const Complex t(1.7, 0.3);
    const std::int64_t R = bessel_truncation_radius(std::abs(t), 1e-16);
    for (std::int64_t y = -2; y <= 4; ++y) {
        Complex direct = 0.0;
        for (std::int64_t g = -R; g <= R; ++g)
            if (((g - y) % 3 + 3) % 3 == 0) direct += bessel_i_int(g, t);
        EXPECT_LT(std::abs(direct - a_function(y, t, 3)), 1e-10);
    }
}

TEST(PrincipalSqrt, Branch) {
    EXPECT_EQ(principal_sqrt(0.0), Complex(0.0, 0.0));
    const Complex r = principal_sqrt(Complex(-4.0, 0.0));
    EXPECT_NEAR(r.real(), 0.0, 1e-15);
    EXPECT_NEAR(r.imag(), 2.0, 1e-15);
    const Complex z(-1.0, -1e-300);
    EXPECT_LE(principal_sqrt(z).imag(), 0.0);
    EXPECT_GE(principal_sqrt(z).real(), 0.0);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    const auto rule = gauss_legendre(16);
    for (int p = 0; p < 32; ++p) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
        const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
        EXPECT_NEAR(s, exact, 1e-14) << "degree " << p;
    }
}

TEST(BesselEvalConfig, Validates) {
    BesselEvalConfig cfg;
    cfg.abs_tolerance = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.abs_tolerance = 1e-12;
    cfg.quadrature_nodes = 4;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(CompensatedSum, RecoversCancellation) {
    CompensatedSum<double> acc;
    acc.add(1e16);
    acc.add(1.0);
    acc.add(-1e16);
    EXPECT_EQ(acc.value(), 1.0);
}
