#include "besselsum/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "besselsum/errors.hpp"
#include "besselsum/integer_matrix.hpp"
#include "besselsum/summation.hpp"

namespace besselsum {

namespace {

constexpr double kValueTol = 1e-10;

bool is_unit(std::int64_t a, std::int64_t q) { return std::gcd(a, q) == 1; }

std::int64_t mult_order(std::int64_t a, std::int64_t q) {
    if (q == 1) return 1;
    std::int64_t x = a % q;
    std::int64_t k = 1;
    while (x != 1) {
        x = x * a % q;
        ++k;
    }
    return k;
}

std::int64_t unit_group_exponent(std::int64_t q) {
    std::int64_t e = 1;
    for (std::int64_t a = 1; a < q; ++a)
        if (is_unit(a, q)) e = std::lcm(e, mult_order(a, q));
    return e;
}

// Generators of (Z/PZ)^× for a prime power P, and the exponent vector of every unit.
struct PrimePowerGroup {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> orders;
    std::vector<std::vector<std::int64_t>> exponents; // indexed by residue mod modulus
};

PrimePowerGroup prime_power_group(std::int64_t p, int e) {
    PrimePowerGroup g;
    std::int64_t P = 1;
    for (int i = 0; i < e; ++i) P *= p;
    g.modulus = P;
    g.exponents.assign(static_cast<std::size_t>(P), {});
    if (P == 2) {
        g.exponents[1] = {};
        return g;
    }
    std::vector<std::int64_t> gens;
    if (p == 2 && e >= 3) {
        gens = {P - 1, 5};
        g.orders = {2, P / 4};
    } else {
        const std::int64_t phi = P / p * (p - 1);
        for (std::int64_t c = 2; c < P; ++c) {
            if (is_unit(c, P) && mult_order(c, P) == phi) {
                gens = {c};
                break;
            }
        }
        if (gens.empty()) gens = {1}; // P = 1 never reaches here; P = 3 has generator 2
        g.orders = {phi};
    }
    // Walk the full product of generator powers once.
    std::vector<std::int64_t> idx(gens.size(), 0);
    while (true) {
        std::int64_t v = 1;
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::int64_t r = 0; r < idx[i]; ++r) v = v * gens[i] % P;
        g.exponents[static_cast<std::size_t>(v)] = idx;
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == g.orders[i]) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return g;
}

std::vector<PrimePowerGroup> unit_group_structure(std::int64_t q) {
    std::vector<PrimePowerGroup> parts;
    std::int64_t rest = q;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e > 0) parts.push_back(prime_power_group(p, e));
    }
    if (rest > 1) parts.push_back(prime_power_group(rest, 1));
    return parts;
}

} // namespace

Complex root_of_unity(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("root_of_unity: denominator must be positive");
    const std::int64_t r = positive_mod(num, den);
    if ((4 * r) % den == 0) {
        switch ((4 * r) / den) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    const std::int64_t centred = 2 * r <= den ? r : r - den;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(centred) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

Complex DirichletCharacter::operator()(std::int64_t a) const {
    return values_[static_cast<std::size_t>(positive_mod(a, modulus()))];
}

DirichletCharacter DirichletCharacter::conjugate() const {
    DirichletCharacter c = *this;
    for (auto& v : c.values_) v = std::conj(v);
    return c;
}

bool DirichletCharacter::is_real() const {
    for (const auto& v : values_)
        if (v.imag() != 0.0) return false;
    return true;
}

DirichletCharacter character_from_table(std::int64_t q, std::vector<Complex> values) {
    if (q < 1) throw std::invalid_argument("character modulus must be >= 1");
    if (static_cast<std::int64_t>(values.size()) != q) {
        throw std::invalid_argument("character table length " + std::to_string(values.size()) +
                                    " does not match modulus " + std::to_string(q));
    }
    for (std::int64_t a = 0; a < q; ++a) {
        const double mag = std::abs(values[static_cast<std::size_t>(a)]);
        if (is_unit(a, q)) {
            if (mag < kValueTol) {
                throw WrongSupport("chi(" + std::to_string(a) + ") = 0 although gcd(" + std::to_string(a) +
                                   ", " + std::to_string(q) + ") = 1");
            }
        } else if (mag > kValueTol) {
            throw WrongSupport("chi(" + std::to_string(a) + ") != 0 although gcd(" + std::to_string(a) +
                               ", " + std::to_string(q) + ") != 1");
        }
    }
    const std::int64_t exponent = unit_group_exponent(q);
    for (std::int64_t a = 0; a < q; ++a) {
        if (!is_unit(a, q)) continue;
        const Complex v = values[static_cast<std::size_t>(a)];
        if (std::abs(std::abs(v) - 1.0) > kValueTol ||
            std::abs(std::pow(v, static_cast<int>(exponent)) - 1.0) > 1e-8) {
            throw NotRootOfUnity("chi(" + std::to_string(a) + ") is not a root of unity of order dividing " +
                                 std::to_string(exponent));
        }
    }
    if (std::abs(values[static_cast<std::size_t>(1 % q)] - 1.0) > kValueTol) {
        throw NotMultiplicative("chi(1) != 1");
    }
    for (std::int64_t a = 1; a < q; ++a) {
        if (!is_unit(a, q)) continue;
        for (std::int64_t b = a; b < q; ++b) {
            if (!is_unit(b, q)) continue;
            const Complex lhs = values[static_cast<std::size_t>(a * b % q)];
            const Complex rhs = values[static_cast<std::size_t>(a)] * values[static_cast<std::size_t>(b)];
            if (std::abs(lhs - rhs) > kValueTol) {
                throw NotMultiplicative("chi(" + std::to_string(a) + "*" + std::to_string(b) +
                                        ") != chi(" + std::to_string(a) + ")chi(" + std::to_string(b) + ")");
            }
        }
    }
    DirichletCharacter chi;
    chi.values_ = std::move(values);
    return chi;
}

DirichletCharacter principal_character(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("character modulus must be >= 1");
    std::vector<Complex> values(static_cast<std::size_t>(q));
    for (std::int64_t a = 0; a < q; ++a) values[static_cast<std::size_t>(a)] = is_unit(a, q) ? 1.0 : 0.0;
    return character_from_table(q, std::move(values));
}

int kronecker_symbol(std::int64_t a, std::int64_t b) {
    static constexpr int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a % 2 == 0) && (b % 2 == 0)) return 0;
    int v = 0;
    while (b % 2 == 0) {
        ++v;
        b /= 2;
    }
    int k = (v % 2 == 0) ? 1 : tab2[a & 7];
    if (b < 0) {
        b = -b;
        if (a < 0) k = -k;
    }
    while (true) {
        if (a == 0) return b > 1 ? 0 : k;
        v = 0;
        while (a % 2 == 0) {
            ++v;
            a /= 2;
        }
        if (v % 2 == 1) k *= tab2[b & 7];
        if (a & b & 2) k = -k;
        const std::int64_t r = a < 0 ? -a : a;
        a = b % r;
        b = r;
    }
}

DirichletCharacter kronecker_character(std::int64_t D) {
    const std::int64_t r = positive_mod(D, 4);
    if (D == 0 || (r != 0 && r != 1)) {
        throw UnsupportedModulus("kronecker character needs D = 0 or 1 mod 4 and D != 0, got " +
                                 std::to_string(D));
    }
    const std::int64_t q = D < 0 ? -D : D;
    std::vector<Complex> values(static_cast<std::size_t>(q));
    for (std::int64_t a = 0; a < q; ++a) {
        values[static_cast<std::size_t>(a)] = q == 1 ? 1.0 : static_cast<double>(kronecker_symbol(D, a));
    }
    try {
        return character_from_table(q, std::move(values));
    } catch (const Error& e) {
        throw UnsupportedModulus("(" + std::to_string(D) + "/.) is not a character mod " + std::to_string(q) +
                                 ": " + e.what());
    }
}

std::vector<DirichletCharacter> all_characters(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("character modulus must be >= 1");
    const auto parts = unit_group_structure(q);
    std::vector<std::int64_t> orders;
    for (const auto& p : parts) orders.insert(orders.end(), p.orders.begin(), p.orders.end());
    std::int64_t common = 1;
    for (auto o : orders) common = std::lcm(common, o);

    // exponent vector of every unit residue mod q, via CRT components
    std::vector<std::vector<std::int64_t>> logs(static_cast<std::size_t>(q));
    for (std::int64_t a = 0; a < q; ++a) {
        if (!is_unit(a, q)) continue;
        for (const auto& p : parts) {
            const auto& e = p.exponents[static_cast<std::size_t>(a % p.modulus)];
            logs[static_cast<std::size_t>(a)].insert(logs[static_cast<std::size_t>(a)].end(), e.begin(), e.end());
        }
    }

    std::vector<DirichletCharacter> out;
    std::vector<std::int64_t> j(orders.size(), 0);
    while (true) {
        std::vector<Complex> values(static_cast<std::size_t>(q), 0.0);
        for (std::int64_t a = 0; a < q; ++a) {
            if (!is_unit(a, q)) continue;
            std::int64_t num = 0;
            const auto& l = logs[static_cast<std::size_t>(a)];
            for (std::size_t i = 0; i < orders.size(); ++i) num += j[i] * l[i] * (common / orders[i]);
            values[static_cast<std::size_t>(a)] = root_of_unity(num, common);
        }
        out.push_back(character_from_table(q, std::move(values)));
        std::size_t i = 0;
        while (i < j.size() && ++j[i] == orders[i]) j[i++] = 0;
        if (i == j.size()) break;
    }
    return out;
}

Complex gauss_sum(const DirichletCharacter& chi) {
    const std::int64_t q = chi.modulus();
    if (q == 1) return 1.0;
    return character_dft(chi, 1);
}

Complex character_dft(const DirichletCharacter& chi, std::int64_t m) {
    const std::int64_t q = chi.modulus();
    CompensatedSum<Complex> acc;
    for (std::int64_t a = 0; a < q; ++a) {
        const Complex v = chi.values()[static_cast<std::size_t>(a)];
        if (v == Complex(0.0)) continue;
        acc.add(v * root_of_unity(positive_mod(a * positive_mod(m, q), q), q));
    }
    return acc.value();
}

std::int64_t conductor(const DirichletCharacter& chi) {
    const std::int64_t q = chi.modulus();
    for (std::int64_t f = 1; f < q; ++f) {
        if (q % f != 0) continue;
        bool factors = true;
        for (std::int64_t a = 1; a < q && factors; a += f) {
            // a ≡ 1 (mod f)
            if (is_unit(a, q) && std::abs(chi.values()[static_cast<std::size_t>(a)] - 1.0) > kValueTol) factors = false;
        }
        if (factors) return f;
    }
    return q;
}

bool is_primitive(const DirichletCharacter& chi) { return conductor(chi) == chi.modulus(); }

DirichletCharacterFamily::DirichletCharacterFamily(std::vector<DirichletCharacter> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("character family must be non-empty");
    modulus_ = components_.front().modulus();
    for (const auto& c : components_)
        if (c.modulus() != modulus_) throw std::invalid_argument("character family moduli differ");
}

DirichletCharacterFamily::DirichletCharacterFamily(const DirichletCharacter& chi, std::size_t n)
    : DirichletCharacterFamily(std::vector<DirichletCharacter>(n, chi)) {}

DirichletCharacterFamily DirichletCharacterFamily::trivial(std::size_t n) {
    return DirichletCharacterFamily(principal_character(1), n);
}

bool DirichletCharacterFamily::all_primitive() const {
    for (const auto& c : components_)
        if (!is_primitive(c)) return false;
    return true;
}

Complex DirichletCharacterFamily::gauss_product() const {
    Complex p = 1.0;
    for (const auto& c : components_) p *= gauss_sum(c);
    return p;
}

Complex family_eval(const DirichletCharacterFamily& family, const IntVector& a) {
    if (a.size() != family.size()) throw std::invalid_argument("family_eval: length mismatch");
    Complex p = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        p *= family[j](a[j]);
        if (p == Complex(0.0)) break;
    }
    return p;
}

} // namespace besselsum
