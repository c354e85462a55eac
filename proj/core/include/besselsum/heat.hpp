#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "besselsum/codes.hpp"
#include "besselsum/lattice.hpp"
#include "besselsum/special_functions.hpp"

namespace besselsum {

/// Real values on the lattice points k·B with k in the centred index box [−R, R]^n.
class HeatState {
public:
    HeatState(Lattice lattice, std::int64_t radius, double time = 0.0);

    const Lattice& lattice() const noexcept { return lattice_; }
    std::size_t dimension() const noexcept { return lattice_.dimension(); }
    std::int64_t radius() const noexcept { return radius_; }
    double time() const noexcept { return time_; }
    void set_time(double t) noexcept { time_ = t; }

    std::size_t size() const noexcept { return values_.size(); }
    bool in_window(const IntVector& k) const;
    /// Throws OutOfWindow.
    double at(const IntVector& k) const;
    double& at(const IntVector& k);
    /// Index vector of the flat position i (last coordinate fastest).
    IntVector index_of(std::size_t i) const;
    std::vector<double>& values() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::size_t flat(const IntVector& k) const;

    Lattice lattice_;
    std::int64_t radius_;
    double time_;
    std::vector<double> values_;
};

/// (1/2n) Σ_j (f(x+b_j) + f(x−b_j) − 2f(x)) at x = k·B. Throws OutOfWindow unless k and its
/// 2n neighbours lie in the window.
double laplacian_apply(const HeatState& state, const IntVector& k);

struct PlaneWaveCheck {
    Complex applied;
    Complex expected;
    double residual = 0.0;
};

/// Applies Δ′ = nΔ_{Z^n}, Δ′f(x) = ½Σ_i(f(x+e_i) + f(x−e_i) − 2f(x)), to f = e^{2πi⟨·,γ*⟩}
/// at x and compares with Σ_i(cos 2πγ*_i − 1) f(x). Throws NotLatticePoint unless γ* ∈ Γ*.
PlaneWaveCheck plane_wave_eigen_check(const Lattice& lattice, const RationalVector& gamma_star,
                                      const RationalVector& x);

/// K_{Λ,t}(y) = e^{−t} ∏ I_{(yB^{-1})_j}(t/n). Throws NotLatticePoint unless y ∈ Λ.
double heat_kernel(const Lattice& lattice, const RationalVector& y, double t);
/// Same kernel addressed by index, y = k·B.
double heat_kernel_index(std::size_t n, const IntVector& k, double t);

/// Σ_{‖k‖∞ > R} K_{Λ,t}(kB).
double heat_kernel_tail(std::size_t n, std::int64_t radius, double t);
/// Smallest R with heat_kernel_tail(n, R, t) <= tail. Throws TruncationFailure past the cap.
std::int64_t heat_kernel_radius(std::size_t n, double t, double tail, std::int64_t cap = 100000);

/// Bounded initial data in index coordinates with one of two tail rules: zero outside a
/// window, or periodic in each index coordinate.
class InitialData {
public:
    enum class Rule { Window, Periodic };

    static InitialData delta(std::size_t n);
    static InitialData ones(std::size_t n);
    /// The state's values, zero outside its window.
    static InitialData window(const HeatState& state);
    /// values[k mod periods] on the box ∏[0, p_j), last coordinate fastest.
    static InitialData periodic(IntVector periods, std::vector<double> values);
    /// 1_{ρ^{-1}(C)} on Z^n.
    static InitialData coset(const LinearCode& code);

    Rule rule() const noexcept { return rule_; }
    std::size_t dimension() const noexcept { return n_; }
    const IntVector& periods() const noexcept { return periods_; }
    std::int64_t window_radius() const noexcept { return radius_; }
    double operator()(const IntVector& k) const;
    double sup() const;

private:
    Rule rule_ = Rule::Window;
    std::size_t n_ = 0;
    std::int64_t radius_ = 0;
    IntVector periods_;
    std::vector<double> values_;
};

struct HeatSolution {
    HeatState state;
    /// sup|u₀| times the dropped kernel mass.
    double error_bound = 0.0;
    std::int64_t kernel_radius = 0;
};

/// u(x, t) = Σ_y u₀(x − y) K_{Λ,t}(y) on the index window [−R, R]^n, with the kernel truncated
/// once its dropped mass is below kernel_tail.
HeatSolution heat_solve_convolution(const Lattice& lattice, const InitialData& u0, double t, std::int64_t window_radius,
                                    double kernel_tail = 1e-13);

/// Classical RK4 for u̇ = Δ_Λ u. Periodic data are integrated on one period with wrap-around
/// neighbours; window data on [−box_radius, box_radius]^n with zero outside. step = 0 selects
/// t/ceil(10t). Throws StepTooLarge when step > 1. Returns the state on the index window
/// [−box_radius, box_radius]^n.
HeatState heat_solve_ode_oracle(const Lattice& lattice, const InitialData& u0, double t_final,
                                std::int64_t box_radius, double step = 0.0);

struct CodeHeatValue {
    double value = 0.0;
    /// Discarded imaginary part of the dual-code sum.
    double imaginary_part = 0.0;
    /// The cwe_{C⊥} form, present when ρ(x) ∈ C.
    std::optional<double> cwe_value;
};

/// u(x,t) = e^{−t} (#C/m^n) Σ_{c∈C⊥} ∏ e^{(t/n)cos(2πc_j/m)} e^{2πi x_j c_j/m} for u₀ = 1_{ρ^{-1}(C)}.
CodeHeatValue code_heat_solution(const LinearCode& code, const IntVector& x, double t);

struct ProbeValue {
    double value = 0.0;
    double tail_bound = 0.0;
    std::int64_t radius = 0;
};

/// L (12/L) (ψ_{12,L} * K_{Z,6L²t})(0) with ψ_{12,L} = (12/·) 1_{LZ}. Throws NotCoprime
/// unless gcd(L, 12) = 1.
ProbeValue eta_heat_probe(std::int64_t L, double t);
/// (1/√3) η(iπt).
double eta_probe_target(double t);

} // namespace besselsum
