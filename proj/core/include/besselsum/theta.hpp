#pragma once

#include <cstdint>
#include <vector>

#include "besselsum/characters.hpp"
#include "besselsum/lattice.hpp"
#include "besselsum/lattice_sums.hpp"
#include "besselsum/special_functions.hpp"

namespace besselsum {

struct ThetaValue {
    Complex value;
    std::int64_t series_terms_used = 0;
    /// Rigorous bound on the dropped part of the series.
    double tail_bound = 0.0;
};

/// Θ_Γ(t) = Σ_{γ ∈ Γ} e^{−4π²⟨γ,γ⟩t}, t > 0.
ThetaValue theta_lattice(const Lattice& lattice, double t);

/// Both sides of the character theta transformation
///   (2π)^{−n/2} Σ_k χ(k) e^{−½Σ(x_j + (kA)_j/q)²/t_j + 2πi⟨y, x + kA/q⟩}
///   = (∏𝒢(χ_j)/|det A|) Σ_m χ̄(m) ∏√t_j e^{−2π²Σ(y_j − (m ᵗA^{-1})_j)² t_j + 2πi⟨x, m ᵗA^{-1}⟩},
/// each as an independently truncated Gaussian series. Requires t_j > 0.
IdentityReport theta_char_sides(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                                const Shift& y, const std::vector<double>& t, const SumOptions& opts = {});

struct ContinuumLimitSchedule {
    std::vector<std::int64_t> L_values;
    Lattice lattice;
    DirichletCharacterFamily chi;
    IntVector x;
    Shift y;
    std::vector<double> t;

    /// Throws std::invalid_argument unless L_values is strictly increasing and >= 1.
    void validate() const;
};

struct ContinuumLimitRow {
    std::int64_t L = 0;
    Complex lhs;
    Complex rhs;
    /// |lhs − rhs| of the rescaled Bessel identity at this L.
    double identity_residual = 0.0;
    double lhs_tail_bound = 0.0;
    /// Distance of lhs to the Gaussian (L → ∞) value.
    double limit_residual = 0.0;
    Complex limit;
};

/// Evaluates the identity rescaled by ∏ L√t_j e^{−L²t_j} with t_j → L²t_j, for each L.
std::vector<ContinuumLimitRow> continuum_limit_probe(const ContinuumLimitSchedule& schedule,
                                                     const SumOptions& opts = {});

/// η(τ) = ½ Σ_n (12/n) e^{2πiτn²/24}.
ThetaValue dedekind_eta_series(Complex tau);
/// η(τ) = q^{1/24} ∏_{n≥1} (1 − q^n), q = e^{2πiτ}.
ThetaValue dedekind_eta_product(Complex tau);

struct EtaRoutes {
    ThetaValue series;
    ThetaValue product;
    double route_difference = 0.0;
};
EtaRoutes dedekind_eta(Complex tau);

/// √(i/τ) η(−1/τ) against η(τ).
IdentityReport eta_transformation_check(Complex tau, double tolerance = 1e-12);

/// ϑ₂(v|τ) = Σ_n e^{πiτ(n+½)²} e^{(2n+1)πiv}.
ThetaValue jacobi_theta2(Complex v, Complex tau);
/// ϑ₄(v|τ) = Σ_n (−1)^n e^{πiτn²} e^{2πinv}.
ThetaValue jacobi_theta4(Complex v, Complex tau);

/// (1/√(4πt)) Σ_k e^{−(2k+1)²/4t} against ½ Σ_j (−1)^j e^{−π²j²t}.
IdentityReport jacobi_theta_identity_check(double t, double tolerance = 1e-13);
/// ½√(i/τ) ϑ₂(0|−1/τ) against ½ ϑ₄(0|τ) at τ = iπt.
IdentityReport jacobi_theta_modular_check(double t, double tolerance = 1e-13);
/// Σ_k L e^{−2L²t} I_{(2k+1)L}(2L²t).
double jacobi_discrete_precursor(std::int64_t L, double t);

} // namespace besselsum
