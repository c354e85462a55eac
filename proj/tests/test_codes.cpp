#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <besselsum/codes.hpp>
#include <besselsum/errors.hpp>

using namespace besselsum;

namespace {

std::int64_t ipow(std::int64_t b, std::size_t e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

LinearCode random_code(std::mt19937_64& rng, std::int64_t m, std::size_t n) {
    std::vector<IntVector> gens(1 + rng() % 3, IntVector(n));
    for (auto& g : gens)
        for (auto& v : g) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m));
    return code_from_generators(m, n, gens);
}

} // namespace

TEST(Codes, FromGenerators) {
    EXPECT_EQ(code_from_generators(2, 3, {{1, 1, 1}}).codewords(), (std::vector<IntVector>{{0, 0, 0}, {1, 1, 1}}));
    EXPECT_EQ(code_from_generators(4, 1, {{2}}).codewords(), (std::vector<IntVector>{{0}, {2}}));
    EXPECT_EQ(code_from_generators(5, 2, {}).codewords(), (std::vector<IntVector>{{0, 0}}));
    EXPECT_EQ(code_from_generators(3, 2, {{4, -1}}).codewords(), (std::vector<IntVector>{{0, 0}, {1, 2}, {2, 1}}));
    EXPECT_THROW(code_from_generators(2, 3, {{1, 1}}), std::invalid_argument);
    std::vector<IntVector> unit;
    for (std::size_t i = 0; i < 14; ++i) {
        IntVector e(14, 0);
        e[i] = 1;
        unit.push_back(e);
    }
    EXPECT_THROW(code_from_generators(3, 14, unit, 1000), EnumerationTooLarge);
}

TEST(Codes, Dual) {
    const LinearCode rep = code_from_generators(2, 3, {{1, 1, 1}});
    EXPECT_EQ(dual_code(rep).codewords(),
              (std::vector<IntVector>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    const LinearCode full = code_from_generators(3, 2, {{1, 0}, {0, 1}});
    EXPECT_EQ(dual_code(full).codewords(), (std::vector<IntVector>{{0, 0}}));
    const LinearCode z4 = code_from_generators(4, 1, {{2}});
    EXPECT_EQ(dual_code(z4), z4);
}

TEST(Codes, DualProperties) {
    std::mt19937_64 rng(17);
    for (const std::int64_t m : {2, 3, 4, 6, 9}) {
        for (int trial = 0; trial < 6; ++trial) {
            const std::size_t n = 1 + rng() % 4;
            const LinearCode c = random_code(rng, m, n);
            const LinearCode d = dual_code(c);
            EXPECT_EQ(static_cast<std::int64_t>(c.size() * d.size()), ipow(m, n));
            EXPECT_EQ(dual_code(d), c);
            EXPECT_TRUE(dual_lattice_relation_holds(c));
            for (const auto& a : c.codewords())
                for (const auto& b : d.codewords()) {
                    std::int64_t s = 0;
                    for (std::size_t j = 0; j < n; ++j) s += a[j] * b[j];
                    EXPECT_EQ(s % m, 0);
                }
        }
    }
}

TEST(Codes, LargeDualUsesKernel) {
    // 2^21 words exceed the brute-force range
    std::vector<IntVector> gens = {IntVector(21, 1)};
    const LinearCode rep = code_from_generators(2, 21, gens);
    const LinearCode d = dual_code(rep, 1 << 21);
    EXPECT_EQ(d.size(), std::size_t{1} << 20);
}

TEST(Codes, ParityCheck) {
    EXPECT_EQ(parity_check_code(2, IntMatrix::identity(3)).codewords(), (std::vector<IntVector>{{0, 0, 0}}));
    const LinearCode even = parity_check_code(2, IntMatrix{{1, 1, 1}});
    EXPECT_EQ(even.size(), 4u);
    EXPECT_EQ(even, dual_code(code_from_generators(2, 3, {{1, 1, 1}})));
}

TEST(Codes, CodeLattice) {
    const LinearCode rep = code_from_generators(2, 3, {{1, 1, 1}});
    const Lattice l = code_lattice(rep);
    EXPECT_EQ(l.covolume(), Rational(4));
    EXPECT_TRUE(contains(l, {1, 1, 1}));
    EXPECT_TRUE(contains(l, {2, 0, 0}));
    EXPECT_FALSE(contains(l, {1, 0, 0}));
}

TEST(WeightEnumerators, Examples) {
    const LinearCode rep = code_from_generators(2, 3, {{1, 1, 1}});
    const WeightEnumerator w = cwe(rep);
    EXPECT_EQ(w.terms().size(), 2u);
    EXPECT_EQ(w.coefficient({3, 0}), 1);
    EXPECT_EQ(w.coefficient({0, 3}), 1);
    EXPECT_EQ(hamming_we(rep).coefficients, (std::vector<std::int64_t>{1, 0, 0, 1}));

    const LinearCode d = dual_code(rep);
    EXPECT_EQ(cwe(d).coefficient({3, 0}), 1);
    EXPECT_EQ(cwe(d).coefficient({1, 2}), 3);
    EXPECT_EQ(hamming_we(d).coefficients, (std::vector<std::int64_t>{1, 0, 3, 0}));

    const LinearCode zero = code_from_generators(3, 4, {});
    EXPECT_EQ(cwe(zero).coefficient({4, 0, 0}), 1);
    EXPECT_EQ(cwe(zero).value_at_ones(), 1);
}

TEST(WeightEnumerators, CosetAndOnes) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 4);
        const std::size_t n = 1 + rng() % 4;
        const LinearCode c = random_code(rng, m, n);
        IntVector x(n);
        for (auto& v : x) v = static_cast<std::int64_t>(rng() % 11) - 5;
        EXPECT_EQ(cwe(c, x).value_at_ones(), static_cast<std::int64_t>(c.size()));
        EXPECT_EQ(cwe(c, c.codewords().back()), cwe(c));
    }
}

TEST(WeightEnumerators, HammingMacWilliamsExact) {
    const LinearCode rep = code_from_generators(2, 3, {{1, 1, 1}});
    EXPECT_EQ(hamming_macwilliams_transform(hamming_we(rep), 2, 2).coefficients,
              (std::vector<std::int64_t>{1, 0, 3, 0}));
    std::mt19937_64 rng(31);
    for (const std::int64_t m : {2, 3, 4, 5}) {
        for (int trial = 0; trial < 5; ++trial) {
            const LinearCode c = random_code(rng, m, 1 + rng() % 4);
            EXPECT_EQ(hamming_macwilliams_transform(hamming_we(c), m, static_cast<std::int64_t>(c.size())),
                      hamming_we(dual_code(c)));
        }
    }
    EXPECT_THROW(hamming_macwilliams_transform(HammingEnumerator{{1, 1}}, 2, 4), std::domain_error);
}

TEST(WeightEnumerators, AddValidates) {
    WeightEnumerator w(3, 2);
    EXPECT_THROW(w.add({1, 1}, 1), std::invalid_argument);
    EXPECT_THROW(w.add({1, 0, 0}, 1), std::invalid_argument);
    w.add({1, 1, 0}, 2);
    EXPECT_EQ(w.value_at_ones(), 2);
}

TEST(CweBessel, Examples) {
    const LinearCode zero = code_from_generators(2, 1, {});
    for (const double t : {0.4, 1.5}) {
        const IdentityReport r = verify_cwe_bessel(zero, {0}, Complex(t));
        EXPECT_LT(std::abs(r.lhs - std::cosh(t)), 1e-12);
        EXPECT_TRUE(r.passed());
    }
    const LinearCode full = code_from_generators(3, 2, {{1, 0}, {0, 1}});
    const IdentityReport f = verify_cwe_bessel(full, {0, 0}, Complex(0.8));
    EXPECT_LT(std::abs(f.rhs - std::exp(1.6)), 1e-12);

    SumOptions so;
    so.tolerance = 1e-10;
    const LinearCode rep = code_from_generators(2, 3, {{1, 1, 1}});
    EXPECT_LT(verify_cwe_bessel(rep, {0, 0, 0}, Complex(0.7), so).abs_residual, 1e-10);
    EXPECT_TRUE(verify_cwe_bessel(rep, {1, 0, -1}, {Complex(0.7), Complex(1.2, 0.3), Complex(2.0)}, so).passed());
}

TEST(CweBessel, ParityCheckCongruenceSum) {
    // Σ over Hγ ≡ 0 (m) computed by brute force equals the code-lattice sum
    const IntMatrix h{{1, 2, 0}};
    const LinearCode c = parity_check_code(3, h);
    const Complex t(1.1, 0.0);
    Complex direct = 0.0;
    const int R = 16;
    for (int a = -R; a <= R; ++a)
        for (int b = -R; b <= R; ++b)
            for (int d = -R; d <= R; ++d)
                if (((a + 2 * b) % 3 + 3) % 3 == 0) direct += bessel_i_int(a, t) * bessel_i_int(b, t) * bessel_i_int(d, t);
    const IdentityReport r = verify_cwe_bessel(c, {0, 0, 0}, t);
    EXPECT_LT(std::abs(direct - r.lhs), 1e-12);
    EXPECT_TRUE(r.passed());
}

TEST(MacWilliamsBessel, Examples) {
    const LinearCode rep = code_from_generators(2, 3, {{1, 1, 1}});
    for (const std::int64_t x : {0, 1}) {
        const double t = 0.9;
        const MacWilliamsReport r = verify_macwilliams_bessel(rep, {x, x, x}, Complex(t));
        EXPECT_TRUE(r.passed());
        // 2 W_{C⊥}(e^t, (−1)^x e^{−t}) with W_{C⊥} = X³ + 3XY²
        const double X = std::exp(t);
        const double Y = (x == 0 ? 1.0 : -1.0) * std::exp(-t);
        const double expected = 2.0 * (X * X * X + 3.0 * X * Y * Y);
        EXPECT_LT(std::abs(r.coset.rhs - expected), 1e-12 * expected);
        // classical transform (1/2)[(X+Y)³ + (X−Y)³]
        EXPECT_NEAR(0.5 * (std::pow(X + Y, 3) + std::pow(X - Y, 3)), expected / 2.0, 1e-12 * expected);
        ASSERT_TRUE(r.diagonal.has_value());
    }
    const LinearCode zero = code_from_generators(3, 2, {});
    EXPECT_LT(verify_macwilliams_bessel(zero, {1, 2}, Complex(1.3)).coset.abs_residual, 1e-10);
}

TEST(MacWilliamsBessel, RandomCodes) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 4);
        const std::size_t n = 1 + rng() % 3;
        const LinearCode c = random_code(rng, m, n);
        IntVector x(n);
        for (auto& v : x) v = static_cast<std::int64_t>(rng() % 7) - 3;
        EXPECT_TRUE(verify_macwilliams_bessel(c, x, Complex(1.0, 0.4)).passed());
        EXPECT_TRUE(verify_cwe_bessel(c, x, Complex(0.6, -0.2)).passed());
    }
}
