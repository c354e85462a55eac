#include "besselsum/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "besselsum/errors.hpp"
#include "besselsum/summation.hpp"

namespace besselsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTarget = 1e-17;

// Upper bound for Σ_{i≥0} e^{−c(start + i·step)²}, c > 0, start > 0, step > 0.
double gaussian_tail(double c, double start, double step) {
    const double first = std::exp(-c * start * start);
    const double ratio = std::exp(-c * step * (2.0 * start + step));
    return first / (1.0 - ratio);
}

// Upper bound for Σ_{u ∈ s + hZ} e^{−cu²} over any shift s.
double gaussian_full_sum(double c, double step) { return 1.0 + std::sqrt(kPi / c) / step; }

// Turns of ⟨a, b⟩ reduced into [0, 1) exactly.
Complex exact_phase(const IntVector& a, const RationalVector& b) {
    const Rational turns = frac_of(dot(a, b));
    return root_of_unity(turns.numerator(), turns.denominator());
}

Complex shift_phase(const IntVector& o, const Shift& y) {
    if (y.is_exact()) return exact_phase(o, y.rational());
    double turns = 0.0;
    for (std::size_t j = 0; j < o.size(); ++j) turns += std::fmod(y.values()[j] * static_cast<double>(o[j]), 1.0);
    return std::polar(1.0, 2.0 * kPi * std::fmod(turns, 1.0));
}

// e^{iπ τ m / d} for integer m, keeping the real part of the angle reduced.
Complex exp_i_pi(Complex tau, double m) {
    const double turns = std::fmod(0.5 * tau.real() * m, 1.0);
    return std::exp(-kPi * tau.imag() * m) * std::polar(1.0, 2.0 * kPi * turns);
}

} // namespace

ThetaValue theta_lattice(const Lattice& lattice, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("theta_lattice: t must be > 0");
    const std::size_t n = lattice.dimension();
    const RationalMatrix g_inv = lattice.gram().inverse();
    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) frob += std::pow(to_double(g_inv(i, j)), 2);
    const double lambda_min = 1.0 / std::sqrt(frob);
    const double c = 4.0 * kPi * kPi * t * lambda_min;
    const double full = gaussian_full_sum(c, 1.0);

    std::int64_t radius = 0;
    double tail = 0.0;
    for (;; ++radius) {
        tail = static_cast<double>(n) * std::pow(full, static_cast<double>(n - 1)) * 2.0 *
               gaussian_tail(c, static_cast<double>(radius + 1), 1.0);
        if (tail < 1e-15) break;
    }

    std::vector<std::vector<double>> gram(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram[i][j] = to_double(lattice.gram()(i, j));

    CompensatedSum<double> acc;
    std::int64_t terms = 0;
    IntVector k(n, -radius);
    while (true) {
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q += static_cast<double>(k[i] * k[j]) * gram[i][j];
        acc.add(std::exp(-4.0 * kPi * kPi * q * t));
        ++terms;
        std::size_t i = 0;
        while (i < n && k[i] == radius) k[i++] = -radius;
        if (i == n) break;
        ++k[i];
    }
    return ThetaValue{acc.value(), terms, tail};
}

IdentityReport theta_char_sides(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                                const Shift& y, const std::vector<double>& t, const SumOptions& opts) {
    const std::size_t n = lattice.dimension();
    if (chi.size() != n || x.size() != n || y.size() != n || t.size() != n) {
        throw std::invalid_argument("theta_char_sides: dimension mismatch");
    }
    for (double tj : t)
        if (!(tj > 0.0)) throw std::invalid_argument("theta_char_sides: every t_j must be > 0");
    const IntMatrix b = character_reduced_basis(lattice, chi, opts);

    // LHS over orders o = x + kA/q ∈ Z^n with ‖o‖_∞ <= R.
    const double norm = std::pow(2.0 * kPi, -0.5 * static_cast<double>(n));
    std::int64_t radius = 0;
    double lhs_tail = 0.0;
    for (;; ++radius) {
        lhs_tail = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double c = 0.5 / t[j];
            double other = 1.0;
            for (std::size_t i = 0; i < n; ++i)
                if (i != j) other *= gaussian_full_sum(0.5 / t[i], 1.0);
            lhs_tail += 2.0 * gaussian_tail(c, static_cast<double>(radius + 1), 1.0) * other;
        }
        lhs_tail *= norm;
        if (lhs_tail < kTarget) break;
        if (radius > opts.max_radius) throw TruncationFailure("Gaussian LHS radius exceeds the cap");
    }
    CompensatedSum<Complex> lhs_acc;
    visit_shifted_points(b, x, radius, shifted_point_bounds(b, x, radius), [&](const IntVector& k, const IntVector& o) {
        const Complex c = family_eval(chi, k);
        if (c == Complex(0.0)) return;
        double e = 0.0;
        for (std::size_t j = 0; j < n; ++j) e += static_cast<double>(o[j]) * static_cast<double>(o[j]) / t[j];
        lhs_acc.add(c * std::exp(-0.5 * e) * shift_phase(o, y));
    });
    const Complex lhs = norm * lhs_acc.value();

    // RHS over dual points with ‖y − γ*‖_∞ <= R*.
    const Lattice dual = dual_lattice(lattice);
    const double grid = 1.0 / static_cast<double>(dual.basis().common_denominator());
    double root_t = 1.0;
    for (double tj : t) root_t *= std::sqrt(tj);
    const Complex prefactor = chi.gauss_product() / to_double(lattice.covolume()) * root_t;
    std::int64_t half_steps = 1;
    double rhs_tail = 0.0;
    for (;; ++half_steps) {
        const double r = 0.5 * static_cast<double>(half_steps);
        rhs_tail = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double other = 1.0;
            for (std::size_t i = 0; i < n; ++i)
                if (i != j) other *= gaussian_full_sum(2.0 * kPi * kPi * t[i], grid);
            rhs_tail += 2.0 * gaussian_tail(2.0 * kPi * kPi * t[j], r, grid) * other;
        }
        rhs_tail *= std::abs(prefactor);
        if (rhs_tail < kTarget) break;
    }
    RationalVector centre(n);
    Rational half_width(half_steps, 2);
    if (y.is_exact()) {
        centre = y.rational();
    } else {
        for (std::size_t j = 0; j < n; ++j)
            centre[j] = Rational(static_cast<std::int64_t>(std::llround(y.values()[j] * 1048576.0)), 1048576);
        half_width += Rational(1, 1024);
    }
    CompensatedSum<Complex> rhs_acc;
    for (const auto& p : lattice_points_in_box(dual, centre, half_width)) {
        const Complex c = std::conj(family_eval(chi, p.integer_preimage));
        if (c == Complex(0.0)) continue;
        double e = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = y.is_exact() ? to_double(y.rational()[j] - p.coordinates[j])
                                          : y.values()[j] - to_double(p.coordinates[j]);
            e += d * d * t[j];
        }
        rhs_acc.add(c * std::exp(-2.0 * kPi * kPi * e) * exact_phase(x, p.coordinates));
    }
    const Complex rhs = prefactor * rhs_acc.value();

    IdentityReport report = make_report(lhs, rhs, opts.tolerance);
    report.lhs_truncation_radius = radius;
    report.lhs_tail_bound = lhs_tail;
    report.rhs_tail_bound = rhs_tail;
    report.guaranteed = chi.all_primitive();
    return report;
}

void ContinuumLimitSchedule::validate() const {
    if (L_values.empty()) throw std::invalid_argument("continuum limit schedule needs at least one L");
    for (std::size_t i = 0; i < L_values.size(); ++i) {
        if (L_values[i] < 1) throw std::invalid_argument("continuum limit: L must be >= 1");
        if (i > 0 && L_values[i] <= L_values[i - 1]) {
            throw std::invalid_argument("continuum limit: L values must be strictly increasing");
        }
    }
    for (double tj : t)
        if (!(tj > 0.0)) throw std::invalid_argument("continuum limit: every t_j must be > 0");
}

std::vector<ContinuumLimitRow> continuum_limit_probe(const ContinuumLimitSchedule& schedule, const SumOptions& opts) {
    schedule.validate();
    const std::size_t n = schedule.lattice.dimension();
    const Complex limit = theta_char_sides(schedule.lattice, schedule.chi, schedule.x, schedule.y, schedule.t, opts).lhs;

    std::vector<ContinuumLimitRow> rows;
    for (const std::int64_t L : schedule.L_values) {
        const double Ld = static_cast<double>(L);
        const Lattice scaled = new_lattice(schedule.lattice.basis().scaled(Rational(L)));
        IntVector x(n);
        std::vector<Complex> t(n);
        double factor = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = L * schedule.x[j];
            t[j] = Ld * Ld * schedule.t[j];
            factor *= Ld * std::sqrt(schedule.t[j]);
        }
        Shift y = schedule.y;
        if (y.is_exact()) {
            RationalVector r = y.rational();
            for (auto& v : r) v /= L;
            y = Shift::exact(std::move(r));
        } else {
            std::vector<double> v = y.values();
            for (auto& e : v) e /= Ld;
            y = Shift::approximate(std::move(v));
        }
        const ScaledSum lhs = lhs_bessel_sum_scaled(scaled, schedule.chi, x, y, t,
                                                    opts.truncation_share * opts.tolerance / factor, opts);
        const ScaledSum rhs = rhs_dual_sum_scaled(scaled, schedule.chi, x, y, t, opts);
        ContinuumLimitRow row;
        row.L = L;
        row.lhs = lhs.value * factor;
        row.rhs = rhs.value * factor;
        row.identity_residual = std::abs(row.lhs - row.rhs);
        row.lhs_tail_bound = lhs.tail_bound * factor;
        row.limit = limit;
        row.limit_residual = std::abs(row.lhs - limit);
        rows.push_back(row);
    }
    return rows;
}

ThetaValue dedekind_eta_series(Complex tau) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("eta: Im tau must be > 0");
    const double c = kPi * tau.imag() / 12.0;
    std::int64_t N = 1;
    while (gaussian_tail(c, static_cast<double>(N + 1), 1.0) > kTarget) ++N;
    const DirichletCharacter chi = kronecker_character(12);
    CompensatedSum<Complex> acc;
    std::int64_t terms = 0;
    for (std::int64_t k = -N; k <= N; ++k) {
        const double v = chi(k).real();
        if (v == 0.0) continue;
        acc.add(v * exp_i_pi(tau, static_cast<double>(k * k) / 12.0));
        ++terms;
    }
    return ThetaValue{0.5 * acc.value(), terms, gaussian_tail(c, static_cast<double>(N + 1), 1.0)};
}

ThetaValue dedekind_eta_product(Complex tau) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("eta: Im tau must be > 0");
    const Complex q = exp_i_pi(tau, 2.0);
    const double aq = std::abs(q);
    Complex prod = 1.0;
    Complex qn = 1.0;
    std::int64_t n = 0;
    double tail = 0.0;
    while (true) {
        ++n;
        qn *= q;
        prod *= 1.0 - qn;
        // |∏_{m>n}(1 − q^m) − 1| <= exp(Σ_{m>n}|q|^m) − 1
        tail = std::abs(prod) * std::expm1(std::abs(qn) * aq / (1.0 - aq));
        if (tail < kTarget || n > 100000) break;
    }
    const Complex lead = exp_i_pi(tau, 1.0 / 12.0);
    return ThetaValue{lead * prod, n, std::abs(lead) * tail};
}

EtaRoutes dedekind_eta(Complex tau) {
    EtaRoutes r{dedekind_eta_series(tau), dedekind_eta_product(tau), 0.0};
    r.route_difference = std::abs(r.series.value - r.product.value);
    return r;
}

IdentityReport eta_transformation_check(Complex tau, double tolerance) {
    const Complex root = principal_sqrt(Complex(0.0, 1.0) / tau);
    const ThetaValue inverted = dedekind_eta_series(-1.0 / tau);
    const ThetaValue direct = dedekind_eta_series(tau);
    IdentityReport r = make_report(root * inverted.value, direct.value, tolerance);
    r.lhs_truncation_radius = inverted.series_terms_used;
    r.lhs_tail_bound = std::abs(root) * inverted.tail_bound;
    r.rhs_tail_bound = direct.tail_bound;
    return r;
}

namespace {

// Smallest N with geometric decay past N and a dropped mass below kTarget, for terms bounded
// by exp(−a(m − shift)² + b·m) with m = |n|.
std::int64_t theta_radius(double a, double b, double shift, double& tail) {
    for (std::int64_t N = 1;; ++N) {
        const double m = static_cast<double>(N + 1);
        if (2.0 * a * (m - shift) - b < std::log(2.0)) continue;
        tail = 4.0 * std::exp(-a * (m - shift) * (m - shift) + b * m);
        if (tail < kTarget) return N;
    }
}

} // namespace

ThetaValue jacobi_theta2(Complex v, Complex tau) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("theta2: Im tau must be > 0");
    double tail = 0.0;
    const std::int64_t N = theta_radius(kPi * tau.imag(), 2.0 * kPi * std::abs(v.imag()), 0.5, tail);
    CompensatedSum<Complex> acc;
    for (std::int64_t n = -N - 1; n <= N; ++n) {
        const double h = static_cast<double>(n) + 0.5;
        acc.add(exp_i_pi(tau, h * h) * std::exp(Complex(0.0, kPi * (2.0 * static_cast<double>(n) + 1.0)) * v));
    }
    return ThetaValue{acc.value(), 2 * N + 2, tail};
}

ThetaValue jacobi_theta4(Complex v, Complex tau) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("theta4: Im tau must be > 0");
    double tail = 0.0;
    const std::int64_t N = theta_radius(kPi * tau.imag(), 2.0 * kPi * std::abs(v.imag()), 0.0, tail);
    CompensatedSum<Complex> acc;
    for (std::int64_t n = -N; n <= N; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * exp_i_pi(tau, static_cast<double>(n * n)) *
                std::exp(Complex(0.0, 2.0 * kPi * static_cast<double>(n)) * v));
    }
    return ThetaValue{acc.value(), 2 * N + 1, tail};
}

IdentityReport jacobi_theta_identity_check(double t, double tolerance) {
    if (!(t > 0.0)) throw std::invalid_argument("theta identity: t must be > 0");
    // LHS over odd u = 2k + 1 with |u| <= U.
    const double c_lhs = 1.0 / (4.0 * t);
    std::int64_t U = 1;
    while (2.0 * gaussian_tail(c_lhs, static_cast<double>(U + 2), 2.0) > kTarget) U += 2;
    CompensatedSum<double> lhs_acc;
    for (std::int64_t u = -U; u <= U; u += 2) lhs_acc.add(std::exp(-static_cast<double>(u * u) * c_lhs));
    const double norm = 1.0 / std::sqrt(4.0 * kPi * t);

    const double c_rhs = kPi * kPi * t;
    std::int64_t J = 0;
    while (gaussian_tail(c_rhs, static_cast<double>(J + 1), 1.0) > kTarget) ++J;
    CompensatedSum<double> rhs_acc;
    for (std::int64_t j = -J; j <= J; ++j) {
        rhs_acc.add((j % 2 == 0 ? 1.0 : -1.0) * std::exp(-c_rhs * static_cast<double>(j * j)));
    }
    IdentityReport r = make_report(norm * lhs_acc.value(), 0.5 * rhs_acc.value(), tolerance);
    r.lhs_truncation_radius = U;
    r.lhs_tail_bound = norm * 2.0 * gaussian_tail(c_lhs, static_cast<double>(U + 2), 2.0);
    r.rhs_tail_bound = gaussian_tail(c_rhs, static_cast<double>(J + 1), 1.0);
    return r;
}

IdentityReport jacobi_theta_modular_check(double t, double tolerance) {
    if (!(t > 0.0)) throw std::invalid_argument("theta identity: t must be > 0");
    const Complex tau(0.0, kPi * t);
    const Complex root = principal_sqrt(Complex(0.0, 1.0) / tau);
    const ThetaValue lhs = jacobi_theta2(0.0, -1.0 / tau);
    const ThetaValue rhs = jacobi_theta4(0.0, tau);
    IdentityReport r = make_report(0.5 * root * lhs.value, 0.5 * rhs.value, tolerance);
    r.lhs_truncation_radius = lhs.series_terms_used;
    r.lhs_tail_bound = 0.5 * std::abs(root) * lhs.tail_bound;
    r.rhs_tail_bound = 0.5 * rhs.tail_bound;
    return r;
}

double jacobi_discrete_precursor(std::int64_t L, double t) {
    if (L < 1 || !(t > 0.0)) throw std::invalid_argument("discrete precursor: need L >= 1 and t > 0");
    const double s = 2.0 * static_cast<double>(L * L) * t;
    const std::int64_t R = bessel_truncation_radius(s, 1e-17);
    if (R < 0) throw TruncationFailure("discrete precursor: truncation radius exceeds the cap");
    const auto table = bessel_i_scaled_table(s, R);
    CompensatedSum<double> acc;
    for (std::int64_t m = L; m <= R; m += 2 * L) acc.add(2.0 * table[static_cast<std::size_t>(m)]);
    return static_cast<double>(L) * acc.value();
}

} // namespace besselsum
