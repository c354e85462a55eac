#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "besselsum/integer_matrix.hpp"
#include "besselsum/lattice.hpp"
#include "besselsum/lattice_sums.hpp"

namespace besselsum {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

/// Linear code over Z/mZ stored extensionally. Codewords are sorted lexicographically.
class LinearCode {
public:
    std::int64_t modulus() const noexcept { return modulus_; }
    std::size_t length() const noexcept { return length_; }
    const std::vector<IntVector>& generators() const noexcept { return generators_; }
    const std::vector<IntVector>& codewords() const noexcept { return codewords_; }
    std::size_t size() const noexcept { return codewords_.size(); }
    bool contains(const IntVector& v) const;

    bool operator==(const LinearCode& other) const {
        return modulus_ == other.modulus_ && length_ == other.length_ && codewords_ == other.codewords_;
    }

private:
    friend LinearCode code_from_generators(std::int64_t, std::size_t, std::vector<IntVector>, std::int64_t);
    std::int64_t modulus_ = 2;
    std::size_t length_ = 0;
    std::vector<IntVector> generators_;
    std::vector<IntVector> codewords_;
};

/// Z/mZ-span of the generators. Entries are reduced mod m; throws EnumerationTooLarge
/// once the span exceeds `cap` words.
LinearCode code_from_generators(std::int64_t m, std::size_t n, std::vector<IntVector> generators,
                                std::int64_t cap = kDefaultEnumerationCap);

/// C⊥ = {x : x·c = 0 for all c ∈ C}.
LinearCode dual_code(const LinearCode& code, std::int64_t cap = kDefaultEnumerationCap);

/// {c ∈ (Z/mZ)^n : ρ(H)·ᵗc = 0}.
LinearCode parity_check_code(std::int64_t m, const IntMatrix& H, std::int64_t cap = kDefaultEnumerationCap);

/// ρ^{-1}(C) ⊆ Z^n, an integral lattice of index m^n/#C.
Lattice code_lattice(const LinearCode& code);

/// Checks ρ^{-1}(C⊥) = m·(ρ^{-1}(C))* by mutual containment of basis vectors.
bool dual_lattice_relation_holds(const LinearCode& code);

/// Homogeneous polynomial in X_0..X_{m−1} with integer coefficients, keyed by exponent vector.
class WeightEnumerator {
public:
    WeightEnumerator(std::int64_t modulus, std::size_t degree) : modulus_(modulus), degree_(degree) {}

    std::int64_t modulus() const noexcept { return modulus_; }
    std::size_t degree() const noexcept { return degree_; }
    const std::map<IntVector, std::int64_t>& terms() const noexcept { return terms_; }
    std::int64_t coefficient(const IntVector& exponents) const;
    void add(const IntVector& exponents, std::int64_t count);

    Complex evaluate(const std::vector<Complex>& x) const;
    /// Sum of all coefficients.
    std::int64_t value_at_ones() const;

    bool operator==(const WeightEnumerator& other) const = default;

private:
    std::int64_t modulus_;
    std::size_t degree_;
    std::map<IntVector, std::int64_t> terms_;
};

/// Σ_w a_w X^{n−w} Y^w.
struct HammingEnumerator {
    std::vector<std::int64_t> coefficients;

    std::size_t length() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    Complex evaluate(Complex X, Complex Y) const;
    bool operator==(const HammingEnumerator& other) const = default;
};

/// cwe of the coset ρ(x) + C (x = empty means C itself).
WeightEnumerator cwe(const LinearCode& code, const IntVector& x = {});
HammingEnumerator hamming_we(const LinearCode& code, const IntVector& x = {});

/// (1/size) W(X + (m−1)Y, X − Y) with exact integer coefficients; throws std::domain_error
/// when a coefficient is not divisible by size.
HammingEnumerator hamming_macwilliams_transform(const HammingEnumerator& w, std::int64_t m, std::int64_t size);

/// Σ_{γ ∈ x+ρ^{-1}(C)} ∏ I_{γ_j}(t) against cwe_{ρ(x)+C}(A_0(t), …, A_{m−1}(t)).
IdentityReport verify_cwe_bessel(const LinearCode& code, const IntVector& x, Complex t, const SumOptions& opts = {});
/// Per-coordinate form: the RHS is Σ_{c∈C} ∏_j A_{x_j+c_j}(t_j).
IdentityReport verify_cwe_bessel(const LinearCode& code, const IntVector& x, const std::vector<Complex>& t,
                                 const SumOptions& opts = {});

struct MacWilliamsReport {
    /// cwe_{ρ(x)+C}(mA_0, …, mA_{m−1}) against #C Σ_{c∈C⊥} ∏ e^{t cos(2πc_j/m)} e^{2πi x_j c_j/m}.
    IdentityReport coset;
    /// Present when x is constant: the RHS as #C cwe_{C⊥}(z_0, …, z_{m−1}).
    std::optional<IdentityReport> diagonal;

    bool passed() const noexcept { return coset.passed() && (!diagonal || diagonal->passed()); }
};

MacWilliamsReport verify_macwilliams_bessel(const LinearCode& code, const IntVector& x, Complex t,
                                            double tolerance = 1e-9);

} // namespace besselsum
