#pragma once

#include <cstdint>
#include <vector>

#include "besselsum/rational.hpp"
#include "besselsum/special_functions.hpp"

namespace besselsum {

/// Dirichlet character modulo q stored as its value table on 0..q−1.
class DirichletCharacter {
public:
    std::int64_t modulus() const noexcept { return static_cast<std::int64_t>(values_.size()); }
    const std::vector<Complex>& values() const noexcept { return values_; }

    /// χ(a) for any integer a (reduced mod q).
    Complex operator()(std::int64_t a) const;
    DirichletCharacter conjugate() const;
    bool is_real() const;

private:
    friend DirichletCharacter character_from_table(std::int64_t q, std::vector<Complex> values);
    std::vector<Complex> values_;
};

/// Validates the table and returns the character. Throws WrongSupport, NotRootOfUnity or
/// NotMultiplicative naming the violated condition, std::invalid_argument on a bad length.
DirichletCharacter character_from_table(std::int64_t q, std::vector<Complex> values);

DirichletCharacter principal_character(std::int64_t q);

/// a ↦ (D/a) modulo |D|. Requires D ≡ 0, 1 (mod 4) and D ≠ 0; throws UnsupportedModulus.
DirichletCharacter kronecker_character(std::int64_t D);

/// Every Dirichlet character modulo q (φ(q) of them), built from the structure of (Z/qZ)^×.
std::vector<DirichletCharacter> all_characters(std::int64_t q);

/// Σ_{a=0}^{q−1} χ(a) e^{2πi a/q}; 1 when q = 1.
Complex gauss_sum(const DirichletCharacter& chi);

/// Σ_{a=0}^{q−1} χ(a) e^{2πi a m/q}.
Complex character_dft(const DirichletCharacter& chi, std::int64_t m);

/// Smallest f | q such that χ is constant on unit classes mod f.
std::int64_t conductor(const DirichletCharacter& chi);
bool is_primitive(const DirichletCharacter& chi);

/// Product character χ(a) = ∏ χ_j(a_j) with a common modulus.
class DirichletCharacterFamily {
public:
    explicit DirichletCharacterFamily(std::vector<DirichletCharacter> components);
    /// n copies of one character.
    DirichletCharacterFamily(const DirichletCharacter& chi, std::size_t n);
    /// n copies of the character mod 1.
    static DirichletCharacterFamily trivial(std::size_t n);

    std::int64_t modulus() const noexcept { return modulus_; }
    std::size_t size() const noexcept { return components_.size(); }
    const DirichletCharacter& operator[](std::size_t j) const { return components_[j]; }
    const std::vector<DirichletCharacter>& components() const noexcept { return components_; }

    bool all_primitive() const;
    /// ∏ 𝒢(χ_j).
    Complex gauss_product() const;

private:
    std::int64_t modulus_ = 1;
    std::vector<DirichletCharacter> components_;
};

Complex family_eval(const DirichletCharacterFamily& family, const IntVector& a);

/// Kronecker symbol (a/n) for any integers a, n.
int kronecker_symbol(std::int64_t a, std::int64_t n);

/// e^{2πi num/den} with exact values at multiples of a quarter turn.
Complex root_of_unity(std::int64_t num, std::int64_t den);

} // namespace besselsum
