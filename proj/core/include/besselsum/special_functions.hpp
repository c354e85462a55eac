#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace besselsum {

using Complex = std::complex<double>;

/// Accuracy controls for I-Bessel evaluation.
///
/// Tolerances are measured on the scaled value e^{-|Re t|} I(t): for |I| of order one this
/// is an absolute error, for large arguments it is relative to the growth e^{|Re t|}.
struct BesselEvalConfig {
    double abs_tolerance = 1e-12;
    int max_series_terms = 20000;
    int quadrature_nodes = 32;

    /// Throws std::invalid_argument when abs_tolerance <= 0 or quadrature_nodes < 16.
    void validate() const;
};

/// I_order(t) for integer order and complex t. I_{-k} = I_k is applied before evaluation.
Complex bessel_i_int(std::int64_t order, Complex t, const BesselEvalConfig& cfg = {});

/// e^{-t} I_order(t) for real t >= 0, without intermediate overflow. Result lies in [0, 1].
double bessel_i_scaled(std::int64_t order, double t);

/// e^{-t} I_k(t) for k = 0..max_order, t >= 0.
std::vector<double> bessel_i_scaled_table(double t, std::int64_t max_order);

/// e^{-|Re t|} I_k(t) for k = 0..max_order and complex t.
std::vector<Complex> bessel_i_scaled_table(Complex t, std::int64_t max_order, const BesselEvalConfig& cfg = {});

/// (1/pi) ∫_0^pi e^{t cos θ} cos(order θ) dθ by composite Gauss–Legendre quadrature with
/// panel doubling. Equals I_order(t) for integer order.
Complex bessel_i_tilde(double order, Complex t, const BesselEvalConfig& cfg = {});

/// Σ_{γ ∈ y + mZ} I_γ(t), evaluated through its finite closed form
/// (1/m) Σ_{j=0}^{m-1} exp(t cos 2πj/m) e^{2πi y j/m}.
Complex a_function(std::int64_t y, Complex t, std::int64_t m);

/// Upper bound for the CJK decay estimate: sqrt(s) e^{-s} I_|k|(s) <= (1 + |k|/s)^{-|k|/2}.
double cjk_bound(std::int64_t order, double s);

/// Rigorous upper bound on Σ_{|k| > radius} e^{-s} I_|k|(s) for s >= 0 (two-sided tail).
double scaled_bessel_tail_bound(std::int64_t radius, double s);

/// Smallest radius R with scaled_bessel_tail_bound(R, s) <= tol, or -1 if R would exceed cap.
std::int64_t bessel_truncation_radius(double s, double tol, std::int64_t cap = 100000);

/// Principal square root, arg in (-pi, pi]. sqrt(0) = 0.
Complex principal_sqrt(Complex z);

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

namespace detail {

// Exposed so the independent evaluation routes can be compared against each other.
double scaled_series(std::int64_t order, double t, int max_terms);
double scaled_miller(std::int64_t order, double t);
std::vector<double> scaled_miller_table(double t, std::int64_t max_order);

} // namespace detail

} // namespace besselsum
