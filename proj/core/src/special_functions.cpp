#include "besselsum/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "besselsum/errors.hpp"
#include "besselsum/summation.hpp"

namespace besselsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Beyond this argument the first series term e^{-t}(t/2)^k/k! can underflow.
constexpr double kSeriesLimit = 700.0;
// Complex arguments up to this modulus use the power series.
constexpr double kComplexSeriesRadius = 10.0;

double log_first_term(std::int64_t k, double t) {
    return static_cast<double>(k) * std::log(0.5 * t) - std::lgamma(static_cast<double>(k) + 1.0);
}

} // namespace

void BesselEvalConfig::validate() const {
    if (!(abs_tolerance > 0.0)) throw std::invalid_argument("BesselEvalConfig: abs_tolerance must be > 0");
    if (quadrature_nodes < 16) throw std::invalid_argument("BesselEvalConfig: quadrature_nodes must be >= 16");
    if (max_series_terms < 1) throw std::invalid_argument("BesselEvalConfig: max_series_terms must be >= 1");
}

namespace detail {

double scaled_series(std::int64_t order, double t, int max_terms) {
    const std::int64_t k = order < 0 ? -order : order;
    if (t == 0.0) return k == 0 ? 1.0 : 0.0;

    // Terms are carried relative to `base` so that neither end of the sum over/underflows.
    const double log0 = log_first_term(k, t) - t;
    const bool direct = log0 > -700.0;
    const double q = 0.25 * t * t;
    double term = direct ? std::exp(log0) : 1.0;
    CompensatedSum<double> sum;
    sum.add(term);
    for (int m = 0;; ++m) {
        if (m >= max_terms) {
            throw TermBudgetExceeded("I-Bessel series: order " + std::to_string(k) + ", t=" +
                                     std::to_string(t) + " needs more than " +
                                     std::to_string(max_terms) + " terms");
        }
        const double denom = (m + 1.0) * (m + 1.0 + static_cast<double>(k));
        term *= q / denom;
        sum.add(term);
        const double next_ratio = q / ((m + 2.0) * (m + 2.0 + static_cast<double>(k)));
        if (next_ratio < 1.0) {
            const double tail = term * next_ratio / (1.0 - next_ratio);
            if (tail <= 1e-17 * sum.value()) break;
        }
    }
    if (direct) return sum.value();
    const double s = sum.value();
    if (s <= 0.0) return 0.0;
    return std::exp(log0 + std::log(s));
}

std::vector<double> scaled_miller_table(double t, std::int64_t max_order) {
    if (t <= 0.0) throw std::invalid_argument("scaled_miller_table: t must be > 0");
    const std::int64_t start =
        max_order + 30 + static_cast<std::int64_t>(std::ceil(12.0 * std::sqrt(t)));
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    constexpr double kBig = 1e250;
    constexpr double kShrink = 1e-250;

    double above = 0.0; // I_{j+1}
    double current = 1.0; // I_j, starting at j = start
    double norm = 2.0 * current;
    for (std::int64_t j = start; j > 0; --j) {
        const double below = above + (2.0 * static_cast<double>(j) / t) * current;
        above = current;
        current = below;
        const std::int64_t idx = j - 1;
        norm += (idx == 0 ? 1.0 : 2.0) * current;
        if (idx <= max_order) out[static_cast<std::size_t>(idx)] = current;
        if (current > kBig) {
            current *= kShrink;
            above *= kShrink;
            norm *= kShrink;
            for (std::int64_t i = std::max<std::int64_t>(idx, 0); i <= max_order; ++i) {
                out[static_cast<std::size_t>(i)] *= kShrink;
            }
        }
    }
    for (auto& v : out) v /= norm;
    return out;
}

double scaled_miller(std::int64_t order, double t) {
    const std::int64_t k = order < 0 ? -order : order;
    return scaled_miller_table(t, k)[static_cast<std::size_t>(k)];
}

} // namespace detail

double bessel_i_scaled(std::int64_t order, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("bessel_i_scaled: t must be >= 0");
    if (t <= kSeriesLimit) return detail::scaled_series(order, t, 1 << 20);
    return detail::scaled_miller(order, t);
}

std::vector<double> bessel_i_scaled_table(double t, std::int64_t max_order) {
    if (!(t >= 0.0)) throw std::invalid_argument("bessel_i_scaled_table: t must be >= 0");
    if (max_order < 0) return {};
    if (t > kSeriesLimit) return detail::scaled_miller_table(t, max_order);
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    for (std::int64_t k = 0; k <= max_order; ++k) {
        const double v = detail::scaled_series(k, t, 1 << 20);
        out[static_cast<std::size_t>(k)] = v;
        if (v == 0.0 && static_cast<double>(k) > t) break; // remaining orders underflow too
    }
    return out;
}

std::vector<Complex> bessel_i_scaled_table(Complex t, std::int64_t max_order, const BesselEvalConfig& cfg) {
    if (max_order < 0) return {};
    std::vector<Complex> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (t.imag() == 0.0) {
        const auto real = bessel_i_scaled_table(std::abs(t.real()), max_order);
        for (std::size_t k = 0; k < real.size(); ++k)
            out[k] = (t.real() < 0.0 && k % 2 == 1) ? -real[k] : real[k];
        return out;
    }
    const double shift = std::abs(t.real());
    const double scale = std::exp(-shift);
    for (std::int64_t k = 0; k <= max_order; ++k) {
        out[static_cast<std::size_t>(k)] = bessel_i_int(k, t, cfg) * scale;
    }
    return out;
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

namespace {

// (1/pi) ∫_0^pi e^{t cos θ - shift} cos(x θ) dθ over `panels` equal panels.
Complex composite_tilde(double x, Complex t, double shift, int panels, const GaussLegendreRule& rule) {
    const double h = kPi / panels;
    CompensatedSum<Complex> acc;
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double theta = a + 0.5 * h * (rule.nodes[i] + 1.0);
            const Complex f = std::exp(t * std::cos(theta) - shift) * std::cos(x * theta);
            acc.add(rule.weights[i] * f);
        }
    }
    return acc.value() * (0.5 * h / kPi);
}

Complex complex_series(std::int64_t k, Complex t, int max_terms, double& abs_sum) {
    const Complex half = 0.5 * t;
    Complex term = k == 0 ? Complex(1.0)
                          : std::exp(static_cast<double>(k) * std::log(half) -
                                     std::lgamma(static_cast<double>(k) + 1.0));
    const Complex q = half * half;
    const double qa = std::abs(q);
    CompensatedSum<Complex> sum;
    sum.add(term);
    abs_sum = std::abs(term);
    for (int m = 0;; ++m) {
        if (m >= max_terms) {
            throw TermBudgetExceeded("complex I-Bessel series exceeded its term budget");
        }
        term *= q / ((m + 1.0) * (m + 1.0 + static_cast<double>(k)));
        sum.add(term);
        abs_sum += std::abs(term);
        const double next_ratio = qa / ((m + 2.0) * (m + 2.0 + static_cast<double>(k)));
        if (next_ratio < 1.0) {
            const double tail = std::abs(term) * next_ratio / (1.0 - next_ratio);
            if (tail <= 1e-17 * abs_sum) break;
        }
    }
    return sum.value();
}

} // namespace

Complex bessel_i_tilde(double order, Complex t, const BesselEvalConfig& cfg) {
    cfg.validate();
    const double x = std::abs(order);
    const double shift = std::abs(t.real());
    const GaussLegendreRule rule = gauss_legendre(cfg.quadrature_nodes);
    constexpr int kMaxPanels = 1 << 14;

    Complex previous = composite_tilde(x, t, shift, 1, rule);
    for (int panels = 2; panels <= kMaxPanels; panels *= 2) {
        const Complex current = composite_tilde(x, t, shift, panels, rule);
        if (std::abs(current - previous) <= cfg.abs_tolerance) {
            return current * std::exp(shift);
        }
        previous = current;
    }
    throw QuadratureNotConverged("tilde-I quadrature did not converge for order " +
                                 std::to_string(order));
}

Complex bessel_i_int(std::int64_t order, Complex t, const BesselEvalConfig& cfg) {
    cfg.validate();
    const std::int64_t k = order < 0 ? -order : order;
    if (t == Complex(0.0)) return k == 0 ? 1.0 : 0.0;

    if (t.imag() == 0.0) {
        const double s = std::abs(t.real());
        const double scaled = s <= kSeriesLimit ? detail::scaled_series(k, s, cfg.max_series_terms)
                                                : detail::scaled_miller(k, s);
        double value = scaled * std::exp(s);
        if (t.real() < 0.0 && (k % 2 == 1)) value = -value;
        return value;
    }

    if (std::abs(t) <= kComplexSeriesRadius) {
        double abs_sum = 0.0;
        const Complex value = complex_series(k, t, cfg.max_series_terms, abs_sum);
        const double scale = std::max(1.0, std::exp(std::abs(t.real())));
        if (8.0 * kEps * abs_sum <= cfg.abs_tolerance * scale) return value;
    }
    return bessel_i_tilde(static_cast<double>(k), t, cfg);
}

Complex a_function(std::int64_t y, Complex t, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("a_function: m must be >= 1");
    CompensatedSum<Complex> acc;
    for (std::int64_t j = 0; j < m; ++j) {
        // cos is evaluated on the representative in [-m/2, m/2] so j and m - j agree exactly
        const std::int64_t centred = 2 * j <= m ? j : j - m;
        const double c = std::cos(2.0 * kPi * static_cast<double>(centred) / static_cast<double>(m));
        std::int64_t r = (y % m) * j % m;
        if (r < 0) r += m;
        const std::int64_t rc = 2 * r <= m ? r : r - m;
        const double phase = 2.0 * kPi * static_cast<double>(rc) / static_cast<double>(m);
        acc.add(std::exp(t * c) * Complex(std::cos(phase), std::sin(phase)));
    }
    return acc.value() / static_cast<double>(m);
}

double cjk_bound(std::int64_t order, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("cjk_bound: s must be > 0");
    const double k = std::abs(static_cast<double>(order));
    return std::exp(-0.5 * k * std::log1p(k / s));
}

namespace {

// Upper bound for e^{-s} I_k(s), k >= 0, s > 0.
double scaled_term_bound(std::int64_t k, double s) {
    const double kd = static_cast<double>(k);
    const double cjk = cjk_bound(k, s) / std::sqrt(s);
    // I_k(s) <= (s/2)^k / k! * exp(s^2 / (4(k+1)))
    const double series = std::exp(log_first_term(k, s) + s * s / (4.0 * (kd + 1.0)) - s);
    return std::min({1.0, cjk, series});
}

// Bound on Σ_{k > K} e^{-s} I_k(s) from the geometric decay of the CJK majorant.
double cjk_remainder(std::int64_t K, double s) {
    const double kd = static_cast<double>(K + 1);
    const double ratio = 1.0 / std::sqrt(1.0 + kd / s);
    return cjk_bound(K + 1, s) / std::sqrt(s) / (1.0 - ratio);
}

} // namespace

double scaled_bessel_tail_bound(std::int64_t radius, double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("scaled_bessel_tail_bound: s must be >= 0");
    if (radius < 0) return 1.0;
    if (s == 0.0) return 0.0;
    double sum = 0.0;
    for (std::int64_t k = radius + 1;; ++k) {
        sum += scaled_term_bound(k, s);
        const double rest = cjk_remainder(k, s);
        if (rest <= 1e-6 * sum || rest < 1e-300) return 2.0 * (sum + rest);
    }
}

std::int64_t bessel_truncation_radius(double s, double tol, std::int64_t cap) {
    if (!(tol > 0.0)) throw std::invalid_argument("bessel_truncation_radius: tol must be > 0");
    if (s == 0.0) return 0;
    // Term bounds b_1..b_K, then a CJK geometric remainder after K.
    std::vector<double> bounds{0.0};
    std::int64_t k = 1;
    double remainder = 0.0;
    while (true) {
        bounds.push_back(scaled_term_bound(k, s));
        remainder = cjk_remainder(k, s);
        if (2.0 * remainder <= 1e-3 * tol || remainder < 1e-300) break;
        if (k > cap) return -1;
        ++k;
    }
    // suffix[R] = Σ_{j > R} b_j + remainder
    double suffix = remainder;
    std::int64_t best = static_cast<std::int64_t>(bounds.size()) - 1;
    for (std::int64_t r = static_cast<std::int64_t>(bounds.size()) - 1; r >= 0; --r) {
        if (2.0 * suffix > tol) break;
        best = r;
        suffix += bounds[static_cast<std::size_t>(r)];
    }
    return best > cap ? -1 : best;
}

Complex principal_sqrt(Complex z) {
    if (z == Complex(0.0)) return 0.0;
    if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
    return std::sqrt(z);
}

} // namespace besselsum
