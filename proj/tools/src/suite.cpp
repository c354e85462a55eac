#include "besselsum_cli/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include <besselsum/characters.hpp>
#include <besselsum/codes.hpp>
#include <besselsum/errors.hpp>
#include <besselsum/heat.hpp>
#include <besselsum/lattice.hpp>
#include <besselsum/lattice_sums.hpp>
#include <besselsum/theta.hpp>

#include "besselsum_cli/report.hpp"

namespace besselsum::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Tracks the worst ratio residual / allowance over a batch of checks.
struct Worst {
    double residual = 0.0;
    double allowance = 1.0;
    bool all_passed = true;
    std::size_t count = 0;

    void add(double r, double allow, bool passed) {
        ++count;
        all_passed = all_passed && passed;
        if (!(r / allow <= residual / allowance)) {
            residual = r;
            allowance = allow;
        }
    }
    void add(const IdentityReport& r) {
        add(r.abs_residual, r.tolerance + r.lhs_tail_bound + r.rhs_tail_bound, r.passed());
    }
    std::string summary() const {
        return std::to_string(count) + " checks, worst residual " + sci(residual) + " vs bound " + sci(allowance);
    }
};

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct BasisCase {
    IntMatrix basis;
    std::int64_t q = 1;
    DirichletCharacter chi = principal_character(1);
};

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(rng, lo, hi);
    return m;
}

std::int64_t abs_det(const IntMatrix& m) {
    const Rational d = m.to_rational().determinant();
    return std::abs(d.numerator());
}

IntMatrix scaled(IntMatrix m, std::int64_t s) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= s;
    return m;
}

BasisCase draw_basis(std::mt19937_64& rng, std::int64_t q) {
    BasisCase c;
    c.q = q;
    if (q == 1) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
        while (true) {
            c.basis = random_matrix(rng, n, -3, 3);
            const std::int64_t d = abs_det(c.basis);
            if (d >= 1 && d <= 20) return c;
        }
    }
    c.chi = q == 3 ? kronecker_character(-3) : q == 4 ? kronecker_character(-4) : kronecker_character(12);
    if (q == 12) {
        c.basis = IntMatrix{{uniform(rng, 0, 1) == 0 ? 12 : -12}};
        return c;
    }
    const bool one_dim = uniform(rng, 0, 1) == 0;
    if (one_dim) {
        const std::int64_t k = uniform(rng, 1, q == 3 ? 6 : 5);
        c.basis = IntMatrix{{(uniform(rng, 0, 1) == 0 ? 1 : -1) * q * k}};
        return c;
    }
    const std::int64_t max_det = q == 3 ? 2 : 1;
    while (true) {
        IntMatrix b = random_matrix(rng, 2, -2, 2);
        const std::int64_t d = abs_det(b);
        if (d >= 1 && d <= max_det) {
            c.basis = scaled(b, q);
            return c;
        }
    }
}

template <class F>
CriterionResult run_criterion(int id, std::string title, F&& body) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    const auto start = Clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = seconds_since(start);
    return r;
}

} // namespace

CriterionResult criterion_main_identity(const SuiteOptions& opts) {
    return run_criterion(1, "main identity on random lattices", [&](CriterionResult& r) {
        const auto start = Clock::now();
        std::mt19937_64 rng(20240521);
        const std::int64_t qs[] = {1, 3, 4, 12};
        const int bases = opts.quick ? 8 : 20;
        const std::vector<Complex> t_values = {Complex(0.5, 0.0), Complex(2.0, 0.0), Complex(1.0, 0.5)};
        SumOptions so;
        so.tolerance = 1e-9;
        so.threads = opts.threads;
        Worst worst;
        Json cases = Json::array();
        for (int b = 0; b < bases; ++b) {
            const BasisCase bc = draw_basis(rng, qs[b % 4]);
            const std::size_t n = bc.basis.rows();
            const Lattice lattice = new_lattice(bc.basis);
            const DirichletCharacterFamily chi(bc.chi, n);
            IntVector x(n);
            for (auto& v : x) v = uniform(rng, -3, 3);
            RationalVector y_rand(n);
            for (auto& v : y_rand) {
                const std::int64_t den = uniform(rng, 1, 8);
                v = Rational(uniform(rng, -2 * den, 2 * den), den);
            }
            std::vector<std::vector<Complex>> ts;
            for (const Complex tv : t_values) ts.emplace_back(n, tv);
            if (n > 1) {
                std::vector<Complex> mixed(n);
                for (std::size_t j = 0; j < n; ++j) mixed[j] = t_values[(j + static_cast<std::size_t>(b)) % 3];
                ts.push_back(mixed);
            }
            for (const auto& t : ts) {
                for (const Shift& y : {Shift::zero(n), Shift::exact(y_rand)}) {
                    const IdentityReport rep = verify_identity(lattice, chi, x, y, t, so);
                    worst.add(rep);
                    Json c;
                    c["q"] = bc.q;
                    c["n"] = n;
                    c["abs_det"] = abs_det(bc.basis);
                    c["report"] = report_json(rep);
                    cases.push_back(std::move(c));
                }
            }
        }
        const double seconds_allowed = 60.0;
        r.data["cases"] = std::move(cases);
        r.data["runtime_limit_seconds"] = seconds_allowed;
        r.passed = worst.all_passed && seconds_since(start) < seconds_allowed;
        r.detail = std::to_string(bases) + " bases, " + worst.summary();
    });
}

CriterionResult criterion_integer_closed_form(const SuiteOptions& opts) {
    return run_criterion(2, "one-dimensional closed form", [&](CriterionResult& r) {
        SumOptions so;
        so.tolerance = 1e-10;
        so.threads = opts.threads;
        Worst worst;
        for (std::int64_t m = 1; m <= 8; ++m)
            for (std::int64_t x = -3; x <= 3; ++x)
                for (const Complex t : {Complex(0.5, 0.0), Complex(2.0, 0.0), Complex(1.0, 1.0)})
                    worst.add(verify_integer_closed_form(m, x, t, so));
        r.passed = worst.all_passed;
        r.detail = worst.summary();
        r.data["tolerance"] = so.tolerance;
        r.data["worst_residual"] = worst.residual;
    });
}

CriterionResult criterion_discrete_torus(const SuiteOptions& opts) {
    return run_criterion(3, "discrete torus trace", [&](CriterionResult& r) {
        SumOptions so;
        so.tolerance = 1e-10;
        so.threads = opts.threads;
        Worst worst;
        Json rows = Json::array();
        for (const IntVector& m : {IntVector{4}, IntVector{2, 3}, IntVector{4, 6}, IntVector{3, 3, 3}}) {
            for (const double t : {0.5, 1.2}) {
                const IdentityReport rep = discrete_torus_trace(m, Complex(t, 0.0), so);
                worst.add(rep);
                rows.push_back({{"m", m}, {"t", t}, {"report", report_json(rep)}});
            }
        }
        r.passed = worst.all_passed;
        r.detail = worst.summary();
        r.data["rows"] = std::move(rows);
    });
}

CriterionResult criterion_gauss_sums(const SuiteOptions&) {
    return run_criterion(4, "Gauss sums", [&](CriterionResult& r) {
        const Complex g12 = gauss_sum(kronecker_character(12));
        const double g12_err = std::abs(g12 - Complex(std::sqrt(12.0), 0.0));
        bool ok = g12_err < 1e-12;

        double worst_norm = 0.0;
        double worst_dft = 0.0;
        std::size_t primitive = 0;
        for (std::int64_t q = 1; q <= 24; ++q) {
            for (const DirichletCharacter& chi : all_characters(q)) {
                if (!is_primitive(chi)) continue;
                ++primitive;
                const Complex g = gauss_sum(chi);
                worst_norm = std::max(worst_norm, std::abs(std::norm(g) - static_cast<double>(q)));
                for (std::int64_t m = 0; m < q; ++m) {
                    const Complex expected = g * std::conj(chi(m));
                    worst_dft = std::max(worst_dft, std::abs(character_dft(chi, m) - expected));
                }
            }
        }
        ok = ok && worst_norm < 1e-10 && worst_dft < 1e-10;
        r.passed = ok;
        r.detail = "G(12/.) error " + sci(g12_err) + " (1e-12), |G|^2 - q " + sci(worst_norm) + " and DFT " +
                   sci(worst_dft) + " (1e-10) over " + std::to_string(primitive) + " primitive characters";
        r.data["gauss_sum_12"] = complex_json(g12);
        r.data["gauss_sum_12_error"] = g12_err;
        r.data["gauss_sum_12_tolerance"] = 1e-12;
        r.data["worst_norm_residual"] = worst_norm;
        r.data["worst_dft_residual"] = worst_dft;
        r.data["tolerance"] = 1e-10;
    });
}

CriterionResult criterion_eta(const SuiteOptions&) {
    return run_criterion(5, "eta transformation", [&](CriterionResult& r) {
        Worst transform;
        double worst_route = 0.0;
        Json rows = Json::array();
        for (const Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.7), Complex(0.5, 2.0)}) {
            const IdentityReport rep = eta_transformation_check(tau, 1e-12);
            const EtaRoutes routes = dedekind_eta(tau);
            transform.add(rep);
            worst_route = std::max(worst_route, routes.route_difference);
            rows.push_back({{"tau", complex_json(tau)},
                            {"transformation", report_json(rep)},
                            {"route_difference", routes.route_difference},
                            {"route_tolerance", 1e-12}});
        }
        r.passed = transform.all_passed && worst_route < 1e-12;
        r.detail = "transformation " + transform.summary() + "; route difference " + sci(worst_route) + " (1e-12)";
        r.data["rows"] = std::move(rows);
    });
}

CriterionResult criterion_jacobi(const SuiteOptions&) {
    return run_criterion(6, "Jacobi theta identity", [&](CriterionResult& r) {
        Worst worst;
        Json rows = Json::array();
        for (const double t : {0.1, 0.25, 1.0, 5.0}) {
            const IdentityReport rep = jacobi_theta_identity_check(t, 1e-13);
            worst.add(rep);
            rows.push_back({{"t", t}, {"report", report_json(rep)}});
        }
        r.passed = worst.all_passed;
        r.detail = worst.summary();
        r.data["rows"] = std::move(rows);
    });
}

CriterionResult criterion_continuum_limit(const SuiteOptions& opts) {
    return run_criterion(7, "continuum limit", [&](CriterionResult& r) {
        const auto start = Clock::now();
        SumOptions so;
        so.tolerance = 1e-9;
        so.threads = opts.threads;
        const std::vector<std::int64_t> Ls = {8, 16, 32, 64};
        struct Config {
            std::string name;
            IntMatrix basis;
            DirichletCharacter chi;
        };
        const std::vector<Config> configs = {{"Z", IntMatrix{{1}}, principal_character(1)},
                                             {"12Z", IntMatrix{{12}}, kronecker_character(12)}};
        bool ok = true;
        std::string detail;
        Json out = Json::array();
        for (const Config& c : configs) {
            ContinuumLimitSchedule schedule{Ls, new_lattice(c.basis), DirichletCharacterFamily(c.chi, 1), {0},
                                            Shift::zero(1), {0.5}};
            const auto rows = continuum_limit_probe(schedule, so);
            bool decreasing = true;
            Json table = Json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i > 0 && !(rows[i].limit_residual < rows[i - 1].limit_residual)) decreasing = false;
                table.push_back({{"L", rows[i].L},
                                 {"lhs", complex_json(rows[i].lhs)},
                                 {"rhs", complex_json(rows[i].rhs)},
                                 {"identity_residual", rows[i].identity_residual},
                                 {"lhs_tail_bound", rows[i].lhs_tail_bound},
                                 {"limit", complex_json(rows[i].limit)},
                                 {"limit_residual", rows[i].limit_residual}});
            }
            const double last = rows.back().limit_residual;
            const bool this_ok = decreasing && last < 5e-3;
            ok = ok && this_ok;
            if (!detail.empty()) detail += "; ";
            detail += c.name + (decreasing ? " decreasing" : " not decreasing") + ", L=64 residual " + sci(last);
            out.push_back({{"lattice", c.name}, {"passed", this_ok}, {"rows", std::move(table)}});
        }
        const double elapsed = seconds_since(start);
        ok = ok && elapsed < 30.0;
        r.passed = ok;
        r.detail = detail + " (bound 5e-3)";
        r.data["configs"] = std::move(out);
        r.data["final_residual_bound"] = 5e-3;
        r.data["runtime_limit_seconds"] = 30.0;
    });
}

namespace {

std::vector<IntVector> all_words(std::int64_t m, std::size_t n) {
    std::vector<IntVector> out;
    IntVector w(n, 0);
    while (true) {
        out.push_back(w);
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (++w[j] < m) break;
            w[j] = 0;
            if (j == 0) return out;
        }
        if (n == 0) return out;
    }
}

std::int64_t ipow(std::int64_t b, std::size_t e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

CriterionResult criterion_codes(const SuiteOptions& opts) {
    return run_criterion(8, "linear codes", [&](CriterionResult& r) {
        SumOptions so;
        so.tolerance = 1e-9;
        so.threads = opts.threads;

        struct Named {
            std::string name;
            LinearCode code;
        };
        std::mt19937_64 rng(7);
        std::vector<IntVector> random_gens(2, IntVector(4));
        for (auto& g : random_gens)
            for (auto& v : g) v = uniform(rng, 0, 2);
        const std::vector<Named> codes = {
            {"repetition m=2 n=3", code_from_generators(2, 3, {{1, 1, 1}})},
            {"repetition m=2 n=5", code_from_generators(2, 5, {{1, 1, 1, 1, 1}})},
            {"even weight m=2 n=3", parity_check_code(2, IntMatrix{{1, 1, 1}})},
            {"{0,2} in Z/4", code_from_generators(4, 1, {{2}})},
            {"random m=3 n=4", code_from_generators(3, 4, random_gens)},
        };

        bool sizes_ok = true;
        bool relation_ok = true;
        Worst cwe_worst;
        Worst mw_worst;
        Json rows = Json::array();
        for (const Named& nc : codes) {
            const LinearCode& c = nc.code;
            const std::size_t n = c.length();
            const LinearCode d = dual_code(c);
            const bool size_ok = static_cast<std::int64_t>(c.size() * d.size()) == ipow(c.modulus(), n);
            sizes_ok = sizes_ok && size_ok;
            const bool rel = dual_lattice_relation_holds(c);
            relation_ok = relation_ok && rel;

            // one shift inside the code lattice, one outside when the code is proper
            std::vector<IntVector> shifts = {IntVector(n, 0)};
            for (const IntVector& w : all_words(c.modulus(), n)) {
                if (!c.contains(w)) {
                    IntVector shifted = w;
                    shifted[0] -= c.modulus();
                    shifts.push_back(shifted);
                    break;
                }
            }
            shifts.push_back(c.codewords().back());
            Json checks = Json::array();
            for (const IntVector& x : shifts) {
                for (const Complex t : {Complex(0.5, 0.0), Complex(2.0, 0.0), Complex(1.0, 0.5)}) {
                    const IdentityReport a = verify_cwe_bessel(c, x, t, so);
                    const MacWilliamsReport b = verify_macwilliams_bessel(c, x, t, 1e-9);
                    cwe_worst.add(a);
                    mw_worst.add(b.coset);
                    if (b.diagonal) mw_worst.add(*b.diagonal);
                    checks.push_back({{"x", x},
                                      {"t", complex_json(t)},
                                      {"cwe_bessel", report_json(a)},
                                      {"macwilliams", report_json(b.coset)}});
                }
            }
            rows.push_back({{"code", nc.name},
                            {"size", c.size()},
                            {"dual_size", d.size()},
                            {"size_product_exact", size_ok},
                            {"dual_lattice_relation", rel},
                            {"checks", std::move(checks)}});
        }

        // every binary code of length 3: the Hamming transform of W_C is W_{C⊥} coefficient by coefficient
        std::set<std::vector<IntVector>> seen;
        bool exact_ok = true;
        std::size_t exact_count = 0;
        const auto words = all_words(2, 3);
        for (std::size_t a = 0; a < words.size(); ++a) {
            for (std::size_t b = a; b < words.size(); ++b) {
                for (std::size_t c = b; c < words.size(); ++c) {
                    const LinearCode code = code_from_generators(2, 3, {words[a], words[b], words[c]});
                    if (!seen.insert(code.codewords()).second) continue;
                    ++exact_count;
                    const HammingEnumerator transformed =
                        hamming_macwilliams_transform(hamming_we(code), 2, static_cast<std::int64_t>(code.size()));
                    exact_ok = exact_ok && transformed == hamming_we(dual_code(code));
                }
            }
        }
        const HammingEnumerator rep_dual =
            hamming_macwilliams_transform(hamming_we(code_from_generators(2, 3, {{1, 1, 1}})), 2, 2);
        exact_ok = exact_ok && rep_dual.coefficients == std::vector<std::int64_t>{1, 0, 3, 0};

        r.passed = sizes_ok && relation_ok && cwe_worst.all_passed && mw_worst.all_passed && exact_ok;
        r.detail = std::string(sizes_ok ? "|C||C*| = m^n" : "|C||C*| != m^n") + ", cwe " + cwe_worst.summary() +
                   ", MacWilliams " + mw_worst.summary() + ", binary n=3 transform exact on " +
                   std::to_string(exact_count) + " codes: " + (exact_ok ? "yes" : "no");
        r.data["codes"] = std::move(rows);
        r.data["exact_binary_transform"] = exact_ok;
        r.data["dual_lattice_relation"] = relation_ok;
    });
}

CriterionResult criterion_heat(const SuiteOptions&) {
    return run_criterion(9, "lattice heat kernel", [&](CriterionResult& r) {
        const std::vector<std::pair<std::string, IntMatrix>> lattices = {
            {"Z", IntMatrix{{1}}},
            {"Z^2", IntMatrix::identity(2)},
            {"Z^2 B", IntMatrix{{1, 1}, {0, 1}}},
            {"Z^3", IntMatrix::identity(3)},
        };

        // kernel mass
        double worst_mass = 0.0;
        for (const auto& [name, basis] : lattices) {
            const Lattice lattice = new_lattice(basis);
            const std::size_t n = basis.rows();
            for (const double t : {0.5, 5.0, 50.0}) {
                const std::int64_t R = heat_kernel_radius(n, t, 1e-15);
                HeatState box(lattice, R, t);
                std::vector<double> terms;
                terms.reserve(box.size());
                for (std::size_t i = 0; i < box.size(); ++i)
                    terms.push_back(heat_kernel(lattice, lattice.point(box.index_of(i)), t));
                std::sort(terms.begin(), terms.end());
                const double mass = std::accumulate(terms.begin(), terms.end(), 0.0);
                const double err = std::abs(mass - 1.0);
                worst_mass = std::max(worst_mass, err);
                r.data["mass"].push_back({{"lattice", name},
                                          {"t", t},
                                          {"radius", R},
                                          {"mass", mass},
                                          {"tail_bound", heat_kernel_tail(n, R, t)},
                                          {"tolerance", 1e-12}});
            }
        }
        const bool mass_ok = worst_mass < 1e-12;

        // convolution formula against RK4
        const auto rk_start = Clock::now();
        double worst_rk = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& [name, basis] = lattices[i];
            const Lattice lattice = new_lattice(basis);
            const InitialData u0 = InitialData::delta(basis.rows());
            const HeatSolution formula = heat_solve_convolution(lattice, u0, 5.0, 40);
            const HeatState oracle = heat_solve_ode_oracle(lattice, u0, 5.0, 40);
            double err = 0.0;
            for (std::size_t k = 0; k < oracle.size(); ++k)
                err = std::max(err, std::abs(formula.state.values()[k] - oracle.values()[k]));
            worst_rk = std::max(worst_rk, err);
            r.data["rk4"].push_back({{"lattice", name},
                                     {"t", 5.0},
                                     {"box_radius", 40},
                                     {"max_error", err},
                                     {"formula_error_bound", formula.error_bound},
                                     {"tolerance", 1e-6}});
        }
        const double rk_seconds = seconds_since(rk_start);
        const bool rk_ok = worst_rk < 1e-6 && rk_seconds < 30.0;

        // dual-code form, cwe form and convolution
        double worst_triple = 0.0;
        for (const auto& [name, code] : std::vector<std::pair<std::string, LinearCode>>{
                 {"repetition m=2 n=3", code_from_generators(2, 3, {{1, 1, 1}})},
                 {"{0,2} in Z/4", code_from_generators(4, 1, {{2}})}}) {
            const std::size_t n = code.length();
            const Lattice zn = new_lattice(IntMatrix::identity(n));
            for (const double t : {0.3, 1.5, 4.0}) {
                const HeatSolution conv = heat_solve_convolution(zn, InitialData::coset(code), t, 3);
                const HeatState rk = heat_solve_ode_oracle(zn, InitialData::coset(code), t, 3, 0.01);
                double err = 0.0;
                for (std::size_t k = 0; k < conv.state.size(); ++k) {
                    const IntVector x = conv.state.index_of(k);
                    const CodeHeatValue v = code_heat_solution(code, x, t);
                    err = std::max(err, std::abs(v.value - conv.state.values()[k]));
                    err = std::max(err, std::abs(v.value - rk.values()[k]));
                    if (v.cwe_value) err = std::max(err, std::abs(*v.cwe_value - v.value));
                }
                worst_triple = std::max(worst_triple, err);
                r.data["code_heat"].push_back(
                    {{"code", name}, {"t", t}, {"max_disagreement", err}, {"tolerance", 1e-8}});
            }
        }
        const bool triple_ok = worst_triple < 1e-8;

        // u₀ = 1_{2Z}
        double worst_closed = 0.0;
        const LinearCode even = code_from_generators(2, 1, {});
        const Lattice z = new_lattice(IntMatrix{{1}});
        for (const double t : {0.1, 1.0, 3.0}) {
            const HeatSolution conv = heat_solve_convolution(z, InitialData::coset(even), t, 4);
            for (std::int64_t x = -4; x <= 4; ++x) {
                const double expected = 0.5 * (1.0 + (x % 2 == 0 ? 1.0 : -1.0) * std::exp(-2.0 * t));
                worst_closed = std::max(worst_closed, std::abs(code_heat_solution(even, {x}, t).value - expected));
                worst_closed = std::max(worst_closed, std::abs(conv.state.at({x}) - expected));
            }
        }
        const bool closed_ok = worst_closed < 1e-10;

        r.passed = mass_ok && rk_ok && triple_ok && closed_ok;
        r.detail = "mass " + sci(worst_mass) + " (1e-12), RK4 " + sci(worst_rk) + " (1e-6), triple " +
                   sci(worst_triple) + " (1e-8), closed form " + sci(worst_closed) + " (1e-10)";
        r.data["rk4_seconds"] = rk_seconds;
        r.data["rk4_runtime_limit_seconds"] = 30.0;
    });
}

CriterionResult criterion_eta_probe(const SuiteOptions&) {
    return run_criterion(10, "eta heat probe", [&](CriterionResult& r) {
        bool ok = true;
        std::string detail;
        for (const double t : {0.2, 1.0}) {
            const double target = eta_probe_target(t);
            Json rows = Json::array();
            double first = 0.0;
            double last = 0.0;
            for (const std::int64_t L : {5, 7, 11, 13, 25}) {
                const ProbeValue p = eta_heat_probe(L, t);
                const double diff = std::abs(p.value - target);
                if (L == 5) first = diff;
                last = diff;
                rows.push_back({{"L", L}, {"probe", p.value}, {"tail_bound", p.tail_bound}, {"difference", diff}});
            }
            ok = ok && last < first;
            if (!detail.empty()) detail += "; ";
            detail += "t=" + sci(t) + ": " + sci(first) + " -> " + sci(last);
            r.data["t=" + sci(t)] = {{"target", target}, {"rows", std::move(rows)}};
        }
        r.passed = ok;
        r.detail = detail;
    });
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opts) {
    const std::vector<std::function<CriterionResult(const SuiteOptions&)>> criteria = {
        criterion_main_identity, criterion_integer_closed_form, criterion_discrete_torus, criterion_gauss_sums,
        criterion_eta,           criterion_jacobi,              criterion_continuum_limit, criterion_codes,
        criterion_heat,          criterion_eta_probe,
    };
    std::vector<CriterionResult> out;
    for (const auto& c : criteria) out.push_back(c(opts));
    return out;
}

std::string format_line(const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
    return "criterion " + std::to_string(r.id) + ": " + (r.passed ? "PASS " : "FAIL ") + r.title + " (" + r.detail +
           ", " + secs + ")";
}

} // namespace besselsum::cli
