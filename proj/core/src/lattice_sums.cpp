#include "besselsum/lattice_sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "besselsum/errors.hpp"
#include "besselsum/summation.hpp"

namespace besselsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_shapes(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x, const Shift& y,
                  const std::vector<Complex>& t) {
    const std::size_t n = lattice.dimension();
    if (chi.size() != n || x.size() != n || y.size() != n || t.size() != n) {
        throw std::invalid_argument("dimension mismatch: lattice has n=" + std::to_string(n) + ", characters " +
                                    std::to_string(chi.size()) + ", x " + std::to_string(x.size()) + ", y " +
                                    std::to_string(y.size()) + ", t " + std::to_string(t.size()));
    }
}

} // namespace

IntMatrix character_reduced_basis(const Lattice& lattice, const DirichletCharacterFamily& chi,
                                  const SumOptions& opts) {
    const IntMatrix a = lattice.integer_basis();
    const std::int64_t q = chi.modulus();
    IntMatrix b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) % q != 0) {
                throw DivisibilityViolation("basis entry A(" + std::to_string(i) + "," + std::to_string(j) +
                                            ") = " + std::to_string(a(i, j)) + " is not divisible by q = " +
                                            std::to_string(q));
            }
            b(i, j) = a(i, j) / q;
        }
    if (!opts.allow_imprimitive && !chi.all_primitive()) {
        throw NotPrimitive("the identity requires primitive characters modulo q = " + std::to_string(q));
    }
    return b;
}

namespace {

// e^{2πi⟨y, o⟩} for integer o.
class ShiftPhase {
public:
    explicit ShiftPhase(const Shift& y) : y_(y) {
        if (!y.is_exact()) return;
        denom_ = 1;
        for (const auto& r : y.rational()) denom_ = std::lcm(denom_, r.denominator());
        for (const auto& r : y.rational()) numer_.push_back(positive_mod(r.numerator() * (denom_ / r.denominator()), denom_));
        if (denom_ <= (1 << 16)) {
            table_.resize(static_cast<std::size_t>(denom_));
            for (std::int64_t r = 0; r < denom_; ++r) table_[static_cast<std::size_t>(r)] = root_of_unity(r, denom_);
        }
    }

    Complex operator()(const IntVector& o) const {
        if (y_.is_exact()) {
            if (denom_ > (std::int64_t{1} << 31)) {
                const Rational turns = frac_of(dot(o, y_.rational()));
                return root_of_unity(turns.numerator(), turns.denominator());
            }
            std::int64_t r = 0;
            for (std::size_t j = 0; j < o.size(); ++j) r = (r + numer_[j] * positive_mod(o[j], denom_)) % denom_;
            return table_.empty() ? root_of_unity(r, denom_) : table_[static_cast<std::size_t>(r)];
        }
        double turns = 0.0;
        for (std::size_t j = 0; j < o.size(); ++j) turns += std::fmod(y_.values()[j] * static_cast<double>(o[j]), 1.0);
        turns = std::fmod(turns, 1.0);
        return std::polar(1.0, kTwoPi * turns);
    }

private:
    const Shift& y_;
    std::int64_t denom_ = 1;
    IntVector numer_;
    std::vector<Complex> table_;
};

double log1m_product(std::int64_t radius, const std::vector<double>& s) {
    double acc = 0.0;
    for (double sj : s) {
        const double tau = std::min(1.0, scaled_bessel_tail_bound(radius, sj));
        if (tau >= 1.0) return -std::numeric_limits<double>::infinity();
        acc += std::log1p(-tau);
    }
    return acc;
}

std::int64_t choose_radius(const std::vector<double>& s, double excess, double target, std::int64_t cap) {
    auto bound = [&](std::int64_t r) { return std::exp(excess) * product_tail_bound(r, s); };
    if (bound(0) <= target) return 0;
    std::int64_t hi = 1;
    while (bound(hi) > target) {
        if (hi > cap) {
            throw TruncationFailure("LHS truncation radius exceeds the cap of " + std::to_string(cap));
        }
        hi *= 2;
    }
    std::int64_t lo = hi / 2; // bound(lo) > target
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (bound(mid) <= target) hi = mid;
        else lo = mid;
    }
    if (hi > cap) throw TruncationFailure("LHS truncation radius exceeds the cap of " + std::to_string(cap));
    return hi;
}

int resolve_threads(int requested) {
    if (requested >= 1) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

Shift Shift::exact(RationalVector y) {
    Shift s;
    s.approx_.reserve(y.size());
    for (const auto& r : y) s.approx_.push_back(to_double(r));
    s.exact_ = std::move(y);
    return s;
}

Shift Shift::approximate(std::vector<double> y) {
    Shift s;
    s.approx_ = std::move(y);
    return s;
}

Shift Shift::zero(std::size_t n) { return exact(RationalVector(n, Rational(0))); }

Complex ScaledSum::unscaled() const { return value * std::exp(log_scale); }
double ScaledSum::unscaled_tail() const { return tail_bound * std::exp(log_scale); }

IdentityReport make_report(Complex lhs, Complex rhs, double tolerance) {
    IdentityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_residual = std::abs(lhs - rhs);
    r.tolerance = tolerance;
    return r;
}

double product_tail_bound(std::int64_t radius, const std::vector<double>& s) {
    return -std::expm1(log1m_product(radius, s));
}

ScaledSum lhs_bessel_sum_scaled(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                                const Shift& y, const std::vector<Complex>& t, double scaled_tail_target,
                                const SumOptions& opts) {
    check_shapes(lattice, chi, x, y, t);
    const IntMatrix b = character_reduced_basis(lattice, chi, opts);
    const std::size_t n = lattice.dimension();

    std::vector<double> s(n);
    double log_scale = 0.0;
    double excess = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        s[j] = std::abs(t[j]);
        log_scale += std::abs(t[j].real());
        excess += s[j] - std::abs(t[j].real());
    }
    const double target = std::max(scaled_tail_target, std::numeric_limits<double>::min());
    const std::int64_t radius = choose_radius(s, excess, target, opts.max_radius);

    std::vector<std::vector<Complex>> tables(n);
    for (std::size_t j = 0; j < n; ++j) tables[j] = bessel_i_scaled_table(t[j], radius, opts.bessel);

    const auto bounds = shifted_point_bounds(b, x, radius);
    const ShiftPhase phase(y);
    const bool trivial_chi = chi.modulus() == 1;

    auto shard_sum = [&](std::int64_t first_lo, std::int64_t first_hi) {
        CompensatedSum<Complex> acc;
        auto shard = bounds;
        shard[0] = {first_lo, first_hi};
        visit_shifted_points(b, x, radius, shard, [&](const IntVector& k, const IntVector& o) {
            const Complex c = trivial_chi ? Complex(1.0) : family_eval(chi, k);
            if (c == Complex(0.0)) return;
            Complex term = c;
            for (std::size_t j = 0; j < n; ++j) term *= tables[j][static_cast<std::size_t>(std::llabs(o[j]))];
            acc.add(term * phase(o));
        });
        return acc.value();
    };

    for (const auto& bd : bounds)
        if (bd.lo > bd.hi) return ScaledSum{0.0, log_scale, std::exp(excess) * product_tail_bound(radius, s), radius};

    Complex value;
    const int threads = static_cast<int>(
        std::min<std::int64_t>(resolve_threads(opts.threads), bounds[0].hi - bounds[0].lo + 1));
    if (threads <= 1) {
        value = shard_sum(bounds[0].lo, bounds[0].hi);
    } else {
        const std::int64_t span = bounds[0].hi - bounds[0].lo + 1;
        std::vector<Complex> partial(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            const std::int64_t lo = bounds[0].lo + span * w / threads;
            const std::int64_t hi = bounds[0].lo + span * (w + 1) / threads - 1;
            pool.emplace_back([&, w, lo, hi] { partial[static_cast<std::size_t>(w)] = shard_sum(lo, hi); });
        }
        for (auto& th : pool) th.join();
        CompensatedSum<Complex> acc;
        for (const auto& p : partial) acc.add(p);
        value = acc.value();
    }
    return ScaledSum{value, log_scale, std::exp(excess) * product_tail_bound(radius, s), radius};
}

LhsResult lhs_bessel_sum(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                         const Shift& y, const std::vector<Complex>& t, const SumOptions& opts) {
    double log_scale = 0.0;
    for (const auto& tj : t) log_scale += std::abs(tj.real());
    const double target = opts.truncation_share * opts.tolerance * std::exp(-log_scale);
    const ScaledSum sum = lhs_bessel_sum_scaled(lattice, chi, x, y, t, target, opts);
    return {sum.unscaled(), sum.radius, sum.unscaled_tail()};
}

ScaledSum rhs_dual_sum_scaled(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                              const Shift& y, const std::vector<Complex>& t, const SumOptions& opts) {
    check_shapes(lattice, chi, x, y, t);
    character_reduced_basis(lattice, chi, opts);
    const std::size_t n = lattice.dimension();
    double log_scale = 0.0;
    for (const auto& tj : t) log_scale += std::abs(tj.real());

    std::vector<WeightedDualPoint> points;
    if (y.is_exact()) {
        points = dual_points_in_box(lattice, y.rational());
    } else {
        // Enumerate a slightly larger box around a dyadic centre, then classify in floating point.
        RationalVector centre(n);
        for (std::size_t j = 0; j < n; ++j)
            centre[j] = Rational(static_cast<std::int64_t>(std::llround(y.values()[j] * 1048576.0)), 1048576);
        const auto wide = lattice_points_in_box(dual_lattice(lattice), centre, Rational(1, 2) + Rational(1, 1024));
        for (const auto& p : wide) {
            bool inside = true;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = std::abs(y.values()[j] - to_double(p.coordinates[j]));
                if (std::abs(d - 0.5) <= 1e-12) {
                    throw BoundaryAmbiguity("|y_" + std::to_string(j) +
                                            " - gamma*_j| is within 1e-12 of 1/2; use an exact rational y");
                }
                if (d > 0.5) inside = false;
            }
            if (inside) points.push_back({p.coordinates, Rational(1), p.integer_preimage});
        }
    }

    CompensatedSum<Complex> acc;
    for (const auto& p : points) {
        const Complex c = std::conj(family_eval(chi, p.integer_preimage));
        if (c == Complex(0.0)) continue;
        Complex term = c * to_double(p.weight);
        for (std::size_t j = 0; j < n; ++j) {
            const double d = y.is_exact() ? to_double(y.rational()[j] - p.coordinates[j])
                                          : y.values()[j] - to_double(p.coordinates[j]);
            term *= std::exp(t[j] * std::cos(kTwoPi * d) - std::abs(t[j].real()));
        }
        const Rational turns = frac_of(dot(x, p.coordinates));
        term *= root_of_unity(turns.numerator(), turns.denominator());
        acc.add(term);
    }
    const Complex prefactor = chi.gauss_product() / to_double(lattice.covolume());
    return ScaledSum{prefactor * acc.value(), log_scale, 0.0, 0};
}

Complex rhs_dual_sum(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                     const Shift& y, const std::vector<Complex>& t, const SumOptions& opts) {
    return rhs_dual_sum_scaled(lattice, chi, x, y, t, opts).unscaled();
}

IdentityReport verify_identity(const Lattice& lattice, const DirichletCharacterFamily& chi, const IntVector& x,
                               const Shift& y, const std::vector<Complex>& t, const SumOptions& opts) {
    const LhsResult lhs = lhs_bessel_sum(lattice, chi, x, y, t, opts);
    const Complex rhs = rhs_dual_sum(lattice, chi, x, y, t, opts);
    IdentityReport r = make_report(lhs.value, rhs, opts.tolerance);
    r.lhs_truncation_radius = lhs.radius;
    r.lhs_tail_bound = lhs.tail_bound;
    r.guaranteed = chi.all_primitive();
    return r;
}

IdentityReport verify_integer_closed_form(std::int64_t m, std::int64_t x, Complex t, const SumOptions& opts) {
    if (m < 1) throw std::invalid_argument("modulus m must be >= 1");
    const Lattice lattice = new_lattice(IntMatrix{{m}});
    const LhsResult lhs =
        lhs_bessel_sum(lattice, DirichletCharacterFamily::trivial(1), {x}, Shift::zero(1), {t}, opts);
    IdentityReport r = make_report(lhs.value, a_function(x, t, m), opts.tolerance);
    r.lhs_truncation_radius = lhs.radius;
    r.lhs_tail_bound = lhs.tail_bound;
    return r;
}

IdentityReport discrete_torus_trace(const IntVector& m, Complex t, const SumOptions& opts) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("discrete torus needs at least one cycle");
    IntMatrix diag(n, n);
    std::int64_t volume = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[j] < 1) throw std::invalid_argument("cycle lengths must be >= 1");
        diag(j, j) = m[j];
        volume *= m[j];
    }
    // LHS: Σ_{γ ∈ Z^n diag(m)} ∏ I_{γ_j}(2t), times e^{−2nt}.
    const std::vector<Complex> two_t(n, 2.0 * t);
    const ScaledSum sum = lhs_bessel_sum_scaled(new_lattice(diag), DirichletCharacterFamily::trivial(n),
                                                IntVector(n, 0), Shift::zero(n), two_t,
                                                opts.truncation_share * opts.tolerance, opts);
    const Complex factor = std::exp(Complex(sum.log_scale) - 2.0 * static_cast<double>(n) * t);
    const Complex lhs = sum.value * factor;
    const double tail = sum.tail_bound * std::abs(factor);

    CompensatedSum<Complex> acc;
    IntVector k(n, 0);
    while (true) {
        double lambda = 2.0 * static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) lambda -= 2.0 * root_of_unity(k[j], m[j]).real();
        acc.add(std::exp(-lambda * t));
        std::size_t i = 0;
        while (i < n && ++k[i] == m[i]) k[i++] = 0;
        if (i == n) break;
    }
    IdentityReport r = make_report(lhs, acc.value() / static_cast<double>(volume), opts.tolerance);
    r.lhs_truncation_radius = sum.radius;
    r.lhs_tail_bound = tail;
    return r;
}

} // namespace besselsum
