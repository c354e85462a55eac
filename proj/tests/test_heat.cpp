#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <besselsum/errors.hpp>
#include <besselsum/heat.hpp>
#include <besselsum/theta.hpp>

using namespace besselsum;

namespace {

Lattice zn(std::size_t n) { return new_lattice(IntMatrix::identity(n)); }

double max_diff(const HeatState& a, const HeatState& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a.values()[i] - b.at(a.index_of(i))));
    return e;
}

} // namespace

TEST(HeatState, Indexing) {
    HeatState s(zn(2), 2);
    EXPECT_EQ(s.size(), 25u);
    EXPECT_EQ(s.index_of(0), (IntVector{-2, -2}));
    EXPECT_EQ(s.index_of(1), (IntVector{-2, -1}));
    s.at({1, -1}) = 3.0;
    EXPECT_EQ(s.at({1, -1}), 3.0);
    EXPECT_THROW(s.at({3, 0}), OutOfWindow);
    EXPECT_FALSE(s.in_window({0, -3}));
}

TEST(Laplacian, Examples) {
    HeatState ones(zn(2), 3);
    std::fill(ones.values().begin(), ones.values().end(), 1.0);
    EXPECT_EQ(laplacian_apply(ones, {0, 0}), 0.0);
    EXPECT_EQ(laplacian_apply(ones, {2, -2}), 0.0);
    EXPECT_THROW(laplacian_apply(ones, {3, 0}), OutOfWindow);

    HeatState delta(zn(1), 3);
    delta.at({0}) = 1.0;
    EXPECT_EQ(laplacian_apply(delta, {0}), -1.0);
    EXPECT_EQ(laplacian_apply(delta, {1}), 0.5);
    EXPECT_EQ(laplacian_apply(delta, {-1}), 0.5);
}

TEST(Laplacian, PlaneWaves) {
    const Lattice l = new_lattice(IntMatrix{{3, 0}, {0, 4}});
    for (const RationalVector& g : {RationalVector{Rational(1, 3), Rational(1, 4)}, RationalVector{Rational(2), Rational(-1, 2)}}) {
        const PlaneWaveCheck c = plane_wave_eigen_check(l, g, {Rational(1), Rational(-2)});
        EXPECT_LT(c.residual, 1e-14);
    }
    EXPECT_THROW(plane_wave_eigen_check(new_lattice(IntMatrix{{2}}), {Rational(1, 3)}, {Rational(0)}), NotLatticePoint);
}

TEST(HeatKernel, Examples) {
    EXPECT_EQ(heat_kernel(zn(2), {Rational(0), Rational(0)}, 0.0), 1.0);
    EXPECT_EQ(heat_kernel(zn(2), {Rational(1), Rational(0)}, 0.0), 0.0);
    for (const double t : {0.3, 2.0, 40.0}) EXPECT_NEAR(heat_kernel(zn(1), {Rational(0)}, t), bessel_i_scaled(0, t), 1e-16);
    EXPECT_THROW(heat_kernel(new_lattice(IntMatrix{{2}}), {Rational(1)}, 1.0), NotLatticePoint);
}

TEST(HeatKernel, MassAndPositivity) {
    for (const std::size_t n : {1, 2}) {
        for (const double t : {0.5, 5.0, 50.0}) {
            const std::int64_t R = heat_kernel_radius(n, t, 1e-15);
            HeatState box(zn(n), R, t);
            double mass = 0.0;
            for (std::size_t i = 0; i < box.size(); ++i) {
                const double v = heat_kernel_index(n, box.index_of(i), t);
                EXPECT_GE(v, 0.0);
                mass += v;
            }
            EXPECT_NEAR(mass, 1.0, 1e-12);
            EXPECT_LE(heat_kernel_tail(n, R, t), 1e-15);
        }
    }
}

TEST(HeatKernel, Semigroup) {
    for (const std::size_t n : {1, 2}) {
        const double s = 0.7;
        const double t = 1.6;
        const std::int64_t R = 30;
        HeatState ks(zn(n), R);
        for (std::size_t i = 0; i < ks.size(); ++i) ks.values()[i] = heat_kernel_index(n, ks.index_of(i), s);
        const HeatSolution conv = heat_solve_convolution(zn(n), InitialData::window(ks), t, 3);
        for (std::size_t i = 0; i < conv.state.size(); ++i)
            EXPECT_NEAR(conv.state.values()[i], heat_kernel_index(n, conv.state.index_of(i), s + t), 1e-8);
    }
}

TEST(HeatSolve, ConservationAndDelta) {
    const Lattice skew = new_lattice(IntMatrix{{1, 1}, {0, 1}});
    const HeatSolution ones = heat_solve_convolution(skew, InitialData::ones(2), 3.0, 2);
    for (double v : ones.state.values()) EXPECT_NEAR(v, 1.0, 1e-12);

    const HeatSolution d = heat_solve_convolution(skew, InitialData::delta(2), 2.0, 3);
    for (std::size_t i = 0; i < d.state.size(); ++i)
        EXPECT_NEAR(d.state.values()[i], heat_kernel_index(2, d.state.index_of(i), 2.0), 1e-15);
}

TEST(HeatSolve, EvenIndicatorClosedForm) {
    const LinearCode c = code_from_generators(2, 1, {});
    for (const double t : {0.0, 0.4, 2.0}) {
        const HeatSolution s = heat_solve_convolution(zn(1), InitialData::coset(c), t, 3);
        for (std::int64_t x = -3; x <= 3; ++x) {
            const double expected = 0.5 * (1.0 + (x % 2 == 0 ? 1.0 : -1.0) * std::exp(-2.0 * t));
            EXPECT_NEAR(s.state.at({x}), expected, 1e-10);
            EXPECT_NEAR(code_heat_solution(c, {x}, t).value, expected, 1e-12);
        }
    }
    EXPECT_NEAR(code_heat_solution(c, {0}, 0.0).value, 1.0, 1e-15);
    EXPECT_NEAR(code_heat_solution(c, {1}, 0.0).value, 0.0, 1e-15);
}

TEST(HeatOracle, MatchesConvolution) {
    const HeatSolution f = heat_solve_convolution(zn(1), InitialData::delta(1), 5.0, 40);
    EXPECT_LT(max_diff(f.state, heat_solve_ode_oracle(zn(1), InitialData::delta(1), 5.0, 40)), 1e-6);

    const Lattice skew = new_lattice(IntMatrix{{1, 1}, {0, 1}});
    const HeatSolution g = heat_solve_convolution(skew, InitialData::delta(2), 2.0, 30);
    EXPECT_LT(max_diff(g.state, heat_solve_ode_oracle(skew, InitialData::delta(2), 2.0, 30)), 1e-6);

    const HeatState ones = heat_solve_ode_oracle(zn(2), InitialData::ones(2), 4.0, 3);
    for (double v : ones.values()) EXPECT_NEAR(v, 1.0, 1e-12);
    EXPECT_THROW(heat_solve_ode_oracle(zn(1), InitialData::delta(1), 3.0, 5, 1.5), StepTooLarge);
}

TEST(CodeHeat, TripleAgreement) {
    const LinearCode rep = code_from_generators(2, 3, {{1, 1, 1}});
    const double t = 1.5;
    const HeatSolution conv = heat_solve_convolution(zn(3), InitialData::coset(rep), t, 2);
    const HeatState rk = heat_solve_ode_oracle(zn(3), InitialData::coset(rep), t, 2);
    for (std::size_t i = 0; i < conv.state.size(); ++i) {
        const IntVector x = conv.state.index_of(i);
        const CodeHeatValue v = code_heat_solution(rep, x, t);
        EXPECT_NEAR(v.value, conv.state.values()[i], 1e-8);
        EXPECT_NEAR(v.value, rk.values()[i], 1e-6);
        EXPECT_LT(std::abs(v.imaginary_part), 1e-14);
        const bool in_code = rep.contains({((x[0] % 2) + 2) % 2, ((x[1] % 2) + 2) % 2, ((x[2] % 2) + 2) % 2});
        EXPECT_EQ(v.cwe_value.has_value(), in_code);
        if (v.cwe_value) EXPECT_NEAR(*v.cwe_value, v.value, 1e-12);
    }
    const CodeHeatValue at0 = code_heat_solution(rep, {0, 1, 1}, 0.0);
    EXPECT_NEAR(at0.value, 0.0, 1e-15);
}

TEST(EtaProbe, Convergence) {
    for (const double t : {0.2, 1.0}) {
        const double target = eta_probe_target(t);
        EXPECT_LT(std::abs(eta_heat_probe(25, t).value - target), std::abs(eta_heat_probe(5, t).value - target));
    }
    EXPECT_NEAR(eta_probe_target(0.2), 0.48014641001261587666, 1e-15);
    EXPECT_NEAR(eta_probe_target(1.0), 0.25365678130569895847, 1e-15);
    const EtaRoutes r = dedekind_eta(Complex(0.0, std::numbers::pi));
    EXPECT_LT(r.route_difference, 1e-12);
    const ProbeValue one = eta_heat_probe(1, 0.5);
    EXPECT_GT(one.radius, 0);
    EXPECT_LT(one.tail_bound, 1e-15);
    EXPECT_THROW(eta_heat_probe(6, 1.0), NotCoprime);
}
