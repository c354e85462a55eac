#include "besselsum/heat.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "besselsum/characters.hpp"
#include "besselsum/errors.hpp"
#include "besselsum/lattice_sums.hpp"
#include "besselsum/summation.hpp"
#include "besselsum/theta.hpp"

namespace besselsum {

namespace {

std::size_t box_size(std::size_t n, std::int64_t radius) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < n; ++i) s *= static_cast<std::size_t>(2 * radius + 1);
    return s;
}

// Flat array over ∏[0, dims_j) with either zero or wrap-around neighbours.
struct Grid {
    IntVector dims;
    std::vector<std::size_t> strides;
    bool periodic = false;

    explicit Grid(IntVector d, bool wrap) : dims(std::move(d)), strides(dims.size()), periodic(wrap) {
        std::size_t s = 1;
        for (std::size_t j = dims.size(); j-- > 0;) {
            strides[j] = s;
            s *= static_cast<std::size_t>(dims[j]);
        }
    }
    std::size_t size() const {
        std::size_t s = 1;
        for (auto d : dims) s *= static_cast<std::size_t>(d);
        return s;
    }

    void laplacian(const std::vector<double>& f, std::vector<double>& out) const {
        const std::size_t n = dims.size();
        const double w = 1.0 / (2.0 * static_cast<double>(n));
        IntVector k(n, 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const std::int64_t d = dims[j];
                double up = 0.0;
                double down = 0.0;
                if (k[j] + 1 < d) up = f[i + strides[j]];
                else if (periodic) up = f[i - static_cast<std::size_t>(d - 1) * strides[j]];
                if (k[j] > 0) down = f[i - strides[j]];
                else if (periodic) down = f[i + static_cast<std::size_t>(d - 1) * strides[j]];
                acc += up + down - 2.0 * f[i];
            }
            out[i] = w * acc;
            for (std::size_t j = n; j-- > 0;) {
                if (++k[j] < dims[j]) break;
                k[j] = 0;
            }
        }
    }
};

void rk4(const Grid& grid, std::vector<double>& u, double t_final, double step) {
    if (t_final <= 0.0) return;
    const auto steps = static_cast<std::int64_t>(std::ceil(t_final / step - 1e-12));
    const double h = t_final / static_cast<double>(steps);
    const std::size_t size = u.size();
    std::vector<double> k1(size), k2(size), k3(size), k4(size), tmp(size);
    for (std::int64_t s = 0; s < steps; ++s) {
        grid.laplacian(u, k1);
        for (std::size_t i = 0; i < size; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
        grid.laplacian(tmp, k2);
        for (std::size_t i = 0; i < size; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
        grid.laplacian(tmp, k3);
        for (std::size_t i = 0; i < size; ++i) tmp[i] = u[i] + h * k3[i];
        grid.laplacian(tmp, k4);
        for (std::size_t i = 0; i < size; ++i) u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

} // namespace

HeatState::HeatState(Lattice lattice, std::int64_t radius, double time)
    : lattice_(std::move(lattice)), radius_(radius), time_(time) {
    if (radius < 0) throw std::invalid_argument("heat state radius must be >= 0");
    if (time < 0.0) throw std::invalid_argument("heat state time must be >= 0");
    values_.assign(box_size(lattice_.dimension(), radius), 0.0);
}

bool HeatState::in_window(const IntVector& k) const {
    if (k.size() != dimension()) return false;
    for (auto v : k)
        if (v < -radius_ || v > radius_) return false;
    return true;
}

std::size_t HeatState::flat(const IntVector& k) const {
    if (!in_window(k)) throw OutOfWindow("index lies outside the heat state window");
    std::size_t i = 0;
    for (auto v : k) i = i * static_cast<std::size_t>(2 * radius_ + 1) + static_cast<std::size_t>(v + radius_);
    return i;
}

double HeatState::at(const IntVector& k) const { return values_[flat(k)]; }
double& HeatState::at(const IntVector& k) { return values_[flat(k)]; }

IntVector HeatState::index_of(std::size_t i) const {
    const std::size_t n = dimension();
    const auto side = static_cast<std::size_t>(2 * radius_ + 1);
    IntVector k(n);
    for (std::size_t j = n; j-- > 0;) {
        k[j] = static_cast<std::int64_t>(i % side) - radius_;
        i /= side;
    }
    return k;
}

double laplacian_apply(const HeatState& state, const IntVector& k) {
    const std::size_t n = state.dimension();
    IntVector nb = k;
    double acc = 0.0;
    const double centre = state.at(k);
    for (std::size_t j = 0; j < n; ++j) {
        nb[j] = k[j] + 1;
        acc += state.at(nb);
        nb[j] = k[j] - 1;
        acc += state.at(nb);
        nb[j] = k[j];
        acc -= 2.0 * centre;
    }
    return acc / (2.0 * static_cast<double>(n));
}

PlaneWaveCheck plane_wave_eigen_check(const Lattice& lattice, const RationalVector& gamma_star,
                                      const RationalVector& x) {
    const std::size_t n = lattice.dimension();
    if (gamma_star.size() != n || x.size() != n) throw std::invalid_argument("plane wave check: dimension mismatch");
    if (!contains(dual_lattice(lattice), gamma_star)) throw NotLatticePoint("γ* is not a dual lattice point");
    auto f = [&](const RationalVector& p) {
        const Rational turns = frac_of(dot(p, gamma_star));
        return root_of_unity(turns.numerator(), turns.denominator());
    };
    // Δ′ = n Δ_{Z^n}, with Δ_{Z^n} normalised by 1/(2n).
    CompensatedSum<Complex> acc;
    RationalVector p = x;
    const Complex centre = f(x);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = x[i] + 1;
        acc.add(f(p));
        p[i] = x[i] - 1;
        acc.add(f(p));
        p[i] = x[i];
        acc.add(-2.0 * centre);
    }
    const double nd = static_cast<double>(n);
    PlaneWaveCheck r;
    r.applied = nd * (acc.value() / (2.0 * nd));
    double eigen = 0.0;
    for (const auto& g : gamma_star) eigen += std::cos(2.0 * std::numbers::pi * to_double(g)) - 1.0;
    r.expected = eigen * centre;
    r.residual = std::abs(r.applied - r.expected);
    return r;
}

double heat_kernel_index(std::size_t n, const IntVector& k, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat kernel needs t >= 0");
    if (k.size() != n || n == 0) throw std::invalid_argument("heat kernel: dimension mismatch");
    const double s = t / static_cast<double>(n);
    double p = 1.0;
    for (auto kj : k) p *= bessel_i_scaled(kj, s);
    return p;
}

double heat_kernel(const Lattice& lattice, const RationalVector& y, double t) {
    const std::size_t n = lattice.dimension();
    if (y.size() != n) throw std::invalid_argument("heat kernel: dimension mismatch");
    const RationalVector c = multiply(y, lattice.basis_inverse());
    IntVector k(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_integer(c[j])) throw NotLatticePoint("y is not a point of the lattice");
        k[j] = c[j].numerator();
    }
    return heat_kernel_index(n, k, t);
}

double heat_kernel_tail(std::size_t n, std::int64_t radius, double t) {
    return product_tail_bound(radius, std::vector<double>(n, t / static_cast<double>(n)));
}

std::int64_t heat_kernel_radius(std::size_t n, double t, double tail, std::int64_t cap) {
    if (heat_kernel_tail(n, 0, t) <= tail) return 0;
    std::int64_t hi = 1;
    while (heat_kernel_tail(n, hi, t) > tail) {
        if (hi > cap) throw TruncationFailure("heat kernel radius exceeds the cap");
        hi *= 2;
    }
    std::int64_t lo = hi / 2;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (heat_kernel_tail(n, mid, t) <= tail) hi = mid;
        else lo = mid;
    }
    if (hi > cap) throw TruncationFailure("heat kernel radius exceeds the cap");
    return hi;
}

InitialData InitialData::delta(std::size_t n) {
    InitialData d;
    d.rule_ = Rule::Window;
    d.n_ = n;
    d.radius_ = 0;
    d.values_ = {1.0};
    return d;
}

InitialData InitialData::ones(std::size_t n) { return periodic(IntVector(n, 1), {1.0}); }

InitialData InitialData::window(const HeatState& state) {
    InitialData d;
    d.rule_ = Rule::Window;
    d.n_ = state.dimension();
    d.radius_ = state.radius();
    d.values_ = state.values();
    return d;
}

InitialData InitialData::periodic(IntVector periods, std::vector<double> values) {
    std::size_t size = 1;
    for (auto p : periods) {
        if (p < 1) throw std::invalid_argument("periods must be >= 1");
        size *= static_cast<std::size_t>(p);
    }
    if (values.size() != size) throw std::invalid_argument("periodic data needs one value per cell of the period box");
    InitialData d;
    d.rule_ = Rule::Periodic;
    d.n_ = periods.size();
    d.periods_ = std::move(periods);
    d.values_ = std::move(values);
    return d;
}

InitialData InitialData::coset(const LinearCode& code) {
    const std::size_t n = code.length();
    const std::int64_t m = code.modulus();
    std::size_t size = 1;
    for (std::size_t j = 0; j < n; ++j) size *= static_cast<std::size_t>(m);
    std::vector<double> values(size, 0.0);
    for (const auto& c : code.codewords()) {
        std::size_t i = 0;
        for (auto v : c) i = i * static_cast<std::size_t>(m) + static_cast<std::size_t>(v);
        values[i] = 1.0;
    }
    return periodic(IntVector(n, m), std::move(values));
}

double InitialData::operator()(const IntVector& k) const {
    if (k.size() != n_) throw std::invalid_argument("initial data: dimension mismatch");
    std::size_t i = 0;
    if (rule_ == Rule::Window) {
        for (auto v : k) {
            if (v < -radius_ || v > radius_) return 0.0;
            i = i * static_cast<std::size_t>(2 * radius_ + 1) + static_cast<std::size_t>(v + radius_);
        }
    } else {
        for (std::size_t j = 0; j < n_; ++j) {
            i = i * static_cast<std::size_t>(periods_[j]) + static_cast<std::size_t>(positive_mod(k[j], periods_[j]));
        }
    }
    return values_[i];
}

double InitialData::sup() const {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

HeatSolution heat_solve_convolution(const Lattice& lattice, const InitialData& u0, double t, std::int64_t window_radius,
                                    double kernel_tail) {
    const std::size_t n = lattice.dimension();
    if (u0.dimension() != n) throw std::invalid_argument("initial data dimension differs from the lattice");
    if (!(t >= 0.0)) throw std::invalid_argument("heat solve needs t >= 0");
    const std::int64_t R = heat_kernel_radius(n, t, kernel_tail);
    const std::vector<double> table = bessel_i_scaled_table(t / static_cast<double>(n), R);

    HeatSolution sol{HeatState(lattice, window_radius, t), u0.sup() * heat_kernel_tail(n, R, t), R};
    IntVector k(n), y(n), diff(n);
    for (std::size_t i = 0; i < sol.state.size(); ++i) {
        k = sol.state.index_of(i);
        std::fill(y.begin(), y.end(), -R);
        CompensatedSum<double> acc;
        while (true) {
            double w = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                w *= table[static_cast<std::size_t>(std::abs(y[j]))];
                diff[j] = k[j] - y[j];
            }
            const double v = u0(diff);
            if (v != 0.0) acc.add(v * w);
            std::size_t j = n;
            while (j > 0) {
                --j;
                if (y[j] < R) {
                    ++y[j];
                    break;
                }
                y[j] = -R;
                if (j == 0) goto done;
            }
        }
    done:
        sol.state.values()[i] = acc.value();
    }
    return sol;
}

HeatState heat_solve_ode_oracle(const Lattice& lattice, const InitialData& u0, double t_final, std::int64_t box_radius,
                                double step) {
    const std::size_t n = lattice.dimension();
    if (u0.dimension() != n) throw std::invalid_argument("initial data dimension differs from the lattice");
    if (!(t_final >= 0.0)) throw std::invalid_argument("heat oracle needs t >= 0");
    if (step < 0.0) throw std::invalid_argument("step must be > 0");
    if (step == 0.0) step = t_final > 0.0 ? t_final / std::ceil(10.0 * t_final) : 1.0;
    if (step > 1.0) throw StepTooLarge("RK4 step " + std::to_string(step) + " exceeds the stability bound 1");

    HeatState out(lattice, box_radius, t_final);
    if (u0.rule() == InitialData::Rule::Periodic) {
        const Grid grid(u0.periods(), true);
        std::vector<double> u(grid.size());
        IntVector k(n, 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = u0(k);
            for (std::size_t j = n; j-- > 0;) {
                if (++k[j] < grid.dims[j]) break;
                k[j] = 0;
            }
        }
        rk4(grid, u, t_final, step);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const IntVector idx = out.index_of(i);
            std::size_t f = 0;
            for (std::size_t j = 0; j < n; ++j) f += static_cast<std::size_t>(positive_mod(idx[j], grid.dims[j])) * grid.strides[j];
            out.values()[i] = u[f];
        }
        return out;
    }
    const Grid grid(IntVector(n, 2 * box_radius + 1), false);
    std::vector<double> u(grid.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = u0(out.index_of(i));
    rk4(grid, u, t_final, step);
    out.values() = std::move(u);
    return out;
}

CodeHeatValue code_heat_solution(const LinearCode& code, const IntVector& x, double t) {
    const std::size_t n = code.length();
    if (x.size() != n) throw std::invalid_argument("x length differs from the code length");
    if (!(t >= 0.0)) throw std::invalid_argument("code heat solution needs t >= 0");
    const std::int64_t m = code.modulus();
    const double s = t / static_cast<double>(n);
    std::vector<double> e(static_cast<std::size_t>(m));
    for (std::int64_t l = 0; l < m; ++l) e[static_cast<std::size_t>(l)] = std::exp(s * (root_of_unity(l, m).real() - 1.0));

    const LinearCode dual = dual_code(code);
    // e^{−t} ∏_j e^{s cos} = ∏_j e^{s(cos − 1)}
    CompensatedSum<Complex> acc;
    for (const auto& c : dual.codewords()) {
        double p = 1.0;
        std::int64_t turns = 0;
        for (std::size_t j = 0; j < n; ++j) {
            p *= e[static_cast<std::size_t>(c[j])];
            turns = (turns + positive_mod(x[j], m) * c[j]) % m;
        }
        acc.add(p * root_of_unity(turns, m));
    }
    double density = static_cast<double>(code.size());
    for (std::size_t j = 0; j < n; ++j) density /= static_cast<double>(m);

    CodeHeatValue r;
    const Complex u = density * acc.value();
    r.value = u.real();
    r.imaginary_part = u.imag();
    if (code.contains(x)) {
        std::vector<Complex> z(e.begin(), e.end());
        r.cwe_value = density * cwe(dual).evaluate(z).real();
    }
    return r;
}

ProbeValue eta_heat_probe(std::int64_t L, double t) {
    if (L < 1) throw std::invalid_argument("eta probe needs L >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("eta probe needs t > 0");
    if (std::gcd(L, std::int64_t{12}) != 1) throw NotCoprime("L = " + std::to_string(L) + " is not coprime to 12");
    const double Ld = static_cast<double>(L);
    const double s = 6.0 * Ld * Ld * t;
    const std::int64_t R = bessel_truncation_radius(s, 1e-17 / Ld);
    if (R < 0) throw TruncationFailure("eta probe truncation radius exceeds the cap");
    const std::vector<double> table = bessel_i_scaled_table(s, R);
    const double chi_L = static_cast<double>(kronecker_symbol(12, L));
    CompensatedSum<double> acc;
    for (std::int64_t k = -(R / L) * L; k <= R; k += L) {
        const int c = kronecker_symbol(12, -k);
        if (c != 0) acc.add(static_cast<double>(c) * table[static_cast<std::size_t>(std::abs(k))]);
    }
    return ProbeValue{Ld * chi_L * acc.value(), Ld * scaled_bessel_tail_bound(R, s), R};
}

double eta_probe_target(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("eta probe target needs t > 0");
    return dedekind_eta_series(Complex(0.0, std::numbers::pi * t)).value.real() / std::sqrt(3.0);
}

} // namespace besselsum
