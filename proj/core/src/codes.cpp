#include "besselsum/codes.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "besselsum/errors.hpp"
#include "besselsum/summation.hpp"

namespace besselsum {

namespace {

IntVector reduce(const IntVector& v, std::int64_t m) {
    IntVector r(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) r[j] = positive_mod(v[j], m);
    return r;
}

// m^n, or -1 once it exceeds limit.
std::int64_t bounded_power(std::int64_t m, std::size_t n, std::int64_t limit) {
    std::int64_t p = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (p > limit / m) return -1;
        p *= m;
    }
    return p;
}

std::int64_t dot_mod(const IntVector& a, const IntVector& b, std::int64_t m) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s = (s + a[j] * b[j]) % m;
    return s;
}

std::vector<IntVector> all_words(std::int64_t m, std::size_t n) {
    std::vector<IntVector> out;
    IntVector v(n, 0);
    while (true) {
        out.push_back(v);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++v[i] < m) break;
            v[i] = 0;
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

IntVector coset_shift(const LinearCode& code, const IntVector& x) {
    if (x.empty()) return IntVector(code.length(), 0);
    if (x.size() != code.length()) throw std::invalid_argument("coset shift length differs from the code length");
    return reduce(x, code.modulus());
}

} // namespace

bool LinearCode::contains(const IntVector& v) const {
    if (v.size() != length_) return false;
    return std::binary_search(codewords_.begin(), codewords_.end(), reduce(v, modulus_));
}

LinearCode code_from_generators(std::int64_t m, std::size_t n, std::vector<IntVector> generators, std::int64_t cap) {
    if (m < 2) throw std::invalid_argument("code modulus must be >= 2");
    for (auto& g : generators) {
        if (g.size() != n) {
            throw std::invalid_argument("generator length " + std::to_string(g.size()) + " differs from n = " +
                                        std::to_string(n));
        }
        g = reduce(g, m);
    }
    std::set<IntVector> span{IntVector(n, 0)};
    for (const auto& g : generators) {
        std::set<IntVector> next;
        for (const auto& s : span) {
            IntVector w = s;
            do {
                next.insert(w);
                if (static_cast<std::int64_t>(next.size()) > cap) {
                    throw EnumerationTooLarge("code has more than " + std::to_string(cap) + " codewords");
                }
                for (std::size_t j = 0; j < n; ++j) w[j] = (w[j] + g[j]) % m;
            } while (w != s);
        }
        span = std::move(next);
    }
    LinearCode c;
    c.modulus_ = m;
    c.length_ = n;
    c.generators_ = std::move(generators);
    c.codewords_.assign(span.begin(), span.end());
    return c;
}

LinearCode dual_code(const LinearCode& code, std::int64_t cap) {
    const std::int64_t m = code.modulus();
    const std::size_t n = code.length();
    if (bounded_power(m, n, 1'000'000) > 0) {
        // greedy generators: keep a word only when it leaves the current span
        auto encode = [&](const IntVector& v) {
            std::int64_t e = 0;
            for (auto c : v) e = e * m + c;
            return static_cast<std::size_t>(e);
        };
        std::vector<IntVector> generators;
        std::vector<IntVector> span = {IntVector(n, 0)};
        std::vector<char> seen(static_cast<std::size_t>(bounded_power(m, n, 1'000'000)), 0);
        seen[0] = 1;
        for (auto& v : all_words(m, n)) {
            if (seen[encode(v)]) continue;
            bool ok = true;
            for (const auto& g : code.generators())
                if (dot_mod(v, g, m) != 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            const std::size_t base = span.size();
            for (std::int64_t k = 1; k < m; ++k)
                for (std::size_t i = 0; i < base; ++i) {
                    IntVector w(n);
                    for (std::size_t j = 0; j < n; ++j) w[j] = (span[i][j] + k * v[j]) % m;
                    const std::size_t e = encode(w);
                    if (!seen[e]) {
                        seen[e] = 1;
                        span.push_back(std::move(w));
                    }
                }
            generators.push_back(std::move(v));
        }
        return code_from_generators(m, n, std::move(generators), cap);
    }
    if (code.generators().empty()) {
        std::vector<IntVector> unit;
        for (std::size_t j = 0; j < n; ++j) {
            IntVector e(n, 0);
            e[j] = 1;
            unit.push_back(std::move(e));
        }
        return code_from_generators(m, n, std::move(unit), cap);
    }
    return code_from_generators(m, n, kernel_generators_mod(IntMatrix::from_rows(code.generators(), n), m), cap);
}

LinearCode parity_check_code(std::int64_t m, const IntMatrix& H, std::int64_t cap) {
    if (m < 2) throw std::invalid_argument("code modulus must be >= 2");
    return code_from_generators(m, H.cols(), kernel_generators_mod(H, m), cap);
}

Lattice code_lattice(const LinearCode& code) {
    const std::size_t n = code.length();
    std::vector<IntVector> rows = code.generators();
    for (std::size_t j = 0; j < n; ++j) {
        IntVector e(n, 0);
        e[j] = code.modulus();
        rows.push_back(std::move(e));
    }
    const HermiteForm h = hermite_normal_form(IntMatrix::from_rows(rows, n));
    IntMatrix basis(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) basis(i, j) = h.form(i, j);
    return new_lattice(basis);
}

bool dual_lattice_relation_holds(const LinearCode& code) {
    const Lattice a = code_lattice(dual_code(code));
    const Lattice b = new_lattice(dual_lattice(code_lattice(code)).basis().scaled(Rational(code.modulus())));
    const std::size_t n = code.length();
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector ra(n), rb(n);
        for (std::size_t j = 0; j < n; ++j) {
            ra[j] = a.basis()(i, j);
            rb[j] = b.basis()(i, j);
        }
        if (!contains(b, ra) || !contains(a, rb)) return false;
    }
    return true;
}

std::int64_t WeightEnumerator::coefficient(const IntVector& exponents) const {
    const auto it = terms_.find(exponents);
    return it == terms_.end() ? 0 : it->second;
}

void WeightEnumerator::add(const IntVector& exponents, std::int64_t count) {
    if (exponents.size() != static_cast<std::size_t>(modulus_)) {
        throw std::invalid_argument("exponent vector must have one entry per residue");
    }
    if (std::accumulate(exponents.begin(), exponents.end(), std::int64_t{0}) != static_cast<std::int64_t>(degree_)) {
        throw std::invalid_argument("monomial degree differs from the enumerator degree");
    }
    terms_[exponents] += count;
}

Complex WeightEnumerator::evaluate(const std::vector<Complex>& x) const {
    if (x.size() != static_cast<std::size_t>(modulus_)) throw std::invalid_argument("need one value per residue");
    CompensatedSum<Complex> acc;
    for (const auto& [e, c] : terms_) {
        Complex mono = static_cast<double>(c);
        for (std::size_t l = 0; l < e.size(); ++l)
            for (std::int64_t p = 0; p < e[l]; ++p) mono *= x[l];
        acc.add(mono);
    }
    return acc.value();
}

std::int64_t WeightEnumerator::value_at_ones() const {
    std::int64_t s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

Complex HammingEnumerator::evaluate(Complex X, Complex Y) const {
    const std::size_t n = length();
    CompensatedSum<Complex> acc;
    for (std::size_t w = 0; w < coefficients.size(); ++w) {
        if (coefficients[w] == 0) continue;
        acc.add(static_cast<double>(coefficients[w]) * std::pow(X, static_cast<int>(n - w)) *
                std::pow(Y, static_cast<int>(w)));
    }
    return acc.value();
}

WeightEnumerator cwe(const LinearCode& code, const IntVector& x) {
    const IntVector shift = coset_shift(code, x);
    const std::int64_t m = code.modulus();
    WeightEnumerator poly(m, code.length());
    for (const auto& c : code.codewords()) {
        IntVector e(static_cast<std::size_t>(m), 0);
        for (std::size_t j = 0; j < c.size(); ++j) ++e[static_cast<std::size_t>((c[j] + shift[j]) % m)];
        poly.add(e, 1);
    }
    return poly;
}

HammingEnumerator hamming_we(const LinearCode& code, const IntVector& x) {
    const IntVector shift = coset_shift(code, x);
    HammingEnumerator w{std::vector<std::int64_t>(code.length() + 1, 0)};
    for (const auto& c : code.codewords()) {
        std::size_t weight = 0;
        for (std::size_t j = 0; j < c.size(); ++j)
            if ((c[j] + shift[j]) % code.modulus() != 0) ++weight;
        ++w.coefficients[weight];
    }
    return w;
}

HammingEnumerator hamming_macwilliams_transform(const HammingEnumerator& w, std::int64_t m, std::int64_t size) {
    if (m < 2 || size < 1) throw std::invalid_argument("macwilliams transform needs m >= 2 and size >= 1");
    const std::size_t n = w.length();
    // Polynomials in Y with X set to 1, since everything is homogeneous of degree n.
    auto multiply = [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
        std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    std::vector<std::int64_t> total(n + 1, 0);
    for (std::size_t k = 0; k <= n; ++k) {
        if (w.coefficients[k] == 0) continue;
        std::vector<std::int64_t> term{w.coefficients[k]};
        for (std::size_t i = 0; i < n - k; ++i) term = multiply(term, {1, m - 1});
        for (std::size_t i = 0; i < k; ++i) term = multiply(term, {1, -1});
        for (std::size_t i = 0; i <= n; ++i) total[i] += term[i];
    }
    for (auto& c : total) {
        if (c % size != 0) throw std::domain_error("MacWilliams transform has a non-integral coefficient");
        c /= size;
    }
    return HammingEnumerator{total};
}

IdentityReport verify_cwe_bessel(const LinearCode& code, const IntVector& x, Complex t, const SumOptions& opts) {
    const std::size_t n = code.length();
    if (x.size() != n) throw std::invalid_argument("x length differs from the code length");
    const LhsResult lhs = lhs_bessel_sum(code_lattice(code), DirichletCharacterFamily::trivial(n), x, Shift::zero(n),
                                         std::vector<Complex>(n, t), opts);
    std::vector<Complex> a(static_cast<std::size_t>(code.modulus()));
    for (std::size_t l = 0; l < a.size(); ++l) a[l] = a_function(static_cast<std::int64_t>(l), t, code.modulus());
    IdentityReport r = make_report(lhs.value, cwe(code, x).evaluate(a), opts.tolerance);
    r.lhs_truncation_radius = lhs.radius;
    r.lhs_tail_bound = lhs.tail_bound;
    return r;
}

IdentityReport verify_cwe_bessel(const LinearCode& code, const IntVector& x, const std::vector<Complex>& t,
                                 const SumOptions& opts) {
    const std::size_t n = code.length();
    if (x.size() != n || t.size() != n) throw std::invalid_argument("x and t lengths must equal the code length");
    const std::int64_t m = code.modulus();
    const LhsResult lhs =
        lhs_bessel_sum(code_lattice(code), DirichletCharacterFamily::trivial(n), x, Shift::zero(n), t, opts);
    // table[j][l] = A_{x_j + l}(t_j)
    std::vector<std::vector<Complex>> table(n, std::vector<Complex>(static_cast<std::size_t>(m)));
    for (std::size_t j = 0; j < n; ++j)
        for (std::int64_t l = 0; l < m; ++l) table[j][static_cast<std::size_t>(l)] = a_function(x[j] + l, t[j], m);
    CompensatedSum<Complex> rhs;
    for (const auto& c : code.codewords()) {
        Complex p = 1.0;
        for (std::size_t j = 0; j < n; ++j) p *= table[j][static_cast<std::size_t>(c[j])];
        rhs.add(p);
    }
    IdentityReport r = make_report(lhs.value, rhs.value(), opts.tolerance);
    r.lhs_truncation_radius = lhs.radius;
    r.lhs_tail_bound = lhs.tail_bound;
    return r;
}

MacWilliamsReport verify_macwilliams_bessel(const LinearCode& code, const IntVector& x, Complex t, double tolerance) {
    const std::size_t n = code.length();
    if (x.size() != n) throw std::invalid_argument("x length differs from the code length");
    const std::int64_t m = code.modulus();
    const double md = static_cast<double>(m);
    std::vector<Complex> ma(static_cast<std::size_t>(m));
    for (std::int64_t l = 0; l < m; ++l) ma[static_cast<std::size_t>(l)] = md * a_function(l, t, m);
    const Complex lhs = cwe(code, x).evaluate(ma);

    std::vector<Complex> e(static_cast<std::size_t>(m));
    for (std::int64_t l = 0; l < m; ++l) {
        e[static_cast<std::size_t>(l)] = std::exp(t * root_of_unity(l, m).real());
    }
    const LinearCode dual = dual_code(code);
    const double size = static_cast<double>(code.size());
    CompensatedSum<Complex> rhs;
    for (const auto& c : dual.codewords()) {
        Complex p = 1.0;
        std::int64_t turns = 0;
        for (std::size_t j = 0; j < n; ++j) {
            p *= e[static_cast<std::size_t>(c[j])];
            turns = (turns + positive_mod(x[j], m) * c[j]) % m;
        }
        rhs.add(p * root_of_unity(turns, m));
    }
    MacWilliamsReport report{make_report(lhs, size * rhs.value(), tolerance), std::nullopt};

    if (n > 0 && std::all_of(x.begin(), x.end(), [&](std::int64_t v) { return v == x[0]; })) {
        std::vector<Complex> z(static_cast<std::size_t>(m));
        for (std::int64_t l = 0; l < m; ++l) {
            z[static_cast<std::size_t>(l)] = e[static_cast<std::size_t>(l)] * root_of_unity(positive_mod(x[0], m) * l, m);
        }
        report.diagonal = make_report(lhs, size * cwe(dual).evaluate(z), tolerance);
    }
    return report;
}

} // namespace besselsum
