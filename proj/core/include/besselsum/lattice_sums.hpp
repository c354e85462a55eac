#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "besselsum/characters.hpp"
#include "besselsum/lattice.hpp"
#include "besselsum/special_functions.hpp"

namespace besselsum {

/// The shift y of the main identity. Exact rationals decide box-boundary cases exactly;
/// approximate shifts are evaluate-only and raise BoundaryAmbiguity near a box face.
class Shift {
public:
    static Shift exact(RationalVector y);
    static Shift approximate(std::vector<double> y);
    static Shift zero(std::size_t n);

    bool is_exact() const noexcept { return exact_.has_value(); }
    const RationalVector& rational() const { return *exact_; }
    const std::vector<double>& values() const noexcept { return approx_; }
    std::size_t size() const noexcept { return approx_.size(); }

private:
    std::optional<RationalVector> exact_;
    std::vector<double> approx_;
};

struct SumOptions {
    /// Absolute tolerance on |LHS − RHS|.
    double tolerance = 1e-9;
    /// The LHS truncation targets a tail bound of truncation_share · tolerance.
    double truncation_share = 1e-3;
    std::int64_t max_radius = 50000;
    /// 1 = sequential deterministic reduction; > 1 shards the LHS over threads.
    int threads = 1;
    /// Accept imprimitive characters; reports then carry guaranteed = false.
    bool allow_imprimitive = false;
    BesselEvalConfig bessel{};
};

struct IdentityReport {
    Complex lhs;
    Complex rhs;
    double abs_residual = 0.0;
    std::int64_t lhs_truncation_radius = 0;
    double lhs_tail_bound = 0.0;
    double rhs_tail_bound = 0.0;
    double tolerance = 0.0;
    /// False when a hypothesis of the identity was relaxed (imprimitive characters).
    bool guaranteed = true;

    bool passed() const noexcept { return abs_residual < tolerance + lhs_tail_bound + rhs_tail_bound; }
};

IdentityReport make_report(Complex lhs, Complex rhs, double tolerance);

/// A/q as an integer matrix after checking that Γ ⊆ Z^n (NotIntegral), that q divides every
/// entry of A (DivisibilityViolation) and that the characters are primitive (NotPrimitive,
/// unless opts.allow_imprimitive).
IntMatrix character_reduced_basis(const Lattice& lattice, const DirichletCharacterFamily& chi,
                                  const SumOptions& opts);

/// A sum carried as value · e^{log_scale}; value and tail_bound are on the scaled level.
struct ScaledSum {
    Complex value;
    double log_scale = 0.0;
    double tail_bound = 0.0;
    std::int64_t radius = 0;

    Complex unscaled() const;
    double unscaled_tail() const;
};

struct LhsResult {
    Complex value;
    std::int64_t radius = 0;
    double tail_bound = 0.0;
};

/// Σ_{k ∈ Z^n} χ(k) ∏_j I_{x_j + (kA)_j/q}(t_j) e^{2πi⟨y, x + kA/q⟩}, truncated at
/// ‖x + kA/q‖_∞ <= R with R chosen from the Bessel tail bound.
LhsResult lhs_bessel_sum(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                         const Shift& y, const std::vector<Complex>& t, const SumOptions& opts = {});

/// (∏𝒢(χ_j)/|det A|) Σ′_{γ*} χ̄(γ* ᵗA) ∏_j e^{t_j cos 2π(y_j − γ*_j)} e^{2πi⟨x, γ*⟩}.
Complex rhs_dual_sum(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                     const Shift& y, const std::vector<Complex>& t, const SumOptions& opts = {});

IdentityReport verify_identity(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                               const Shift& y, const std::vector<Complex>& t, const SumOptions& opts = {});

/// Scaled forms with log_scale = Σ|Re t_j|. The LHS stops once the scaled tail bound is
/// below scaled_tail_target.
ScaledSum lhs_bessel_sum_scaled(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                                const Shift& y, const std::vector<Complex>& t, double scaled_tail_target,
                                const SumOptions& opts = {});

ScaledSum rhs_dual_sum_scaled(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                              const Shift& y, const std::vector<Complex>& t, const SumOptions& opts = {});

/// Σ_{γ ∈ mZ} I_{x+γ}(t) against (1/m) Σ_{j<m} exp(t cos 2πj/m) e^{2πi xj/m}.
IdentityReport verify_integer_closed_form(std::int64_t m, std::int64_t x, Complex t, const SumOptions& opts = {});

/// Σ_{k ∈ Z^n} ∏ e^{−2t} I_{m_j k_j}(2t) against (1/∏m_j) Σ_{λ ∈ Spec} e^{−λ t}.
IdentityReport discrete_torus_trace(const IntVector& m, Complex t, const SumOptions& opts = {});

/// e^{−Σ s_j} Σ_{‖o‖∞ > R} ∏ I_{o_j}(s_j) upper bound over o ∈ Z^n.
double product_tail_bound(std::int64_t radius, const std::vector<double>& s);

} // namespace besselsum
