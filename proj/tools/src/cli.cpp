#include "besselsum_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include <besselsum/characters.hpp>
#include <besselsum/codes.hpp>
#include <besselsum/errors.hpp>
#include <besselsum/heat.hpp>
#include <besselsum/lattice.hpp>
#include <besselsum/lattice_sums.hpp>
#include <besselsum/theta.hpp>

#include "CLI11.hpp"
#include "besselsum_cli/parse.hpp"
#include "besselsum_cli/report.hpp"
#include "besselsum_cli/suite.hpp"

namespace besselsum::cli {

namespace {

using Clock = std::chrono::steady_clock;

/// Raised for input that parses but cannot be used (unreadable files, inconsistent flags).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GlobalOptions {
    std::string format = "json";
    int threads = 1;
    bool no_meta = false;
};

/// Collects verdict items and their wall-clock times.
class Report {
public:
    Report(std::string command, const GlobalOptions& g) : command_(std::move(command)), global_(g) {}

    Json config = Json::object();
    Json tables = Json::object();

    void item(std::string name, Json body, bool passed) {
        Json j;
        j["name"] = std::move(name);
        for (auto& [k, v] : body.items()) j[k] = v;
        j["verdict"] = passed ? "pass" : "fail";
        if (!global_.no_meta) j["seconds"] = std::chrono::duration<double>(Clock::now() - mark_).count();
        mark_ = Clock::now();
        items_.push_back(std::move(j));
        all_passed_ = all_passed_ && passed;
    }
    void item(std::string name, const IdentityReport& r) { item(std::move(name), report_json(r), r.passed()); }

    bool passed() const { return all_passed_; }

    Json to_json(const std::vector<std::string>& argv) const {
        Json j;
        j["schema"] = "1";
        j["command"] = command_;
        j["argv"] = argv;
        j["config"] = config;
        j["config_digest"] = fnv1a_hex(config.dump());
        j["items"] = items_;
        if (!tables.empty()) j["tables"] = tables;
        j["verdict"] = all_passed_ ? "pass" : "fail";
        if (!global_.no_meta) {
            j["meta"] = {{"wall_seconds", std::chrono::duration<double>(Clock::now() - start_).count()},
                         {"threads", global_.threads}};
        }
        return j;
    }

    const Json& items() const { return items_; }

private:
    std::string command_;
    GlobalOptions global_;
    Json items_ = Json::array();
    bool all_passed_ = true;
    Clock::time_point start_ = Clock::now();
    Clock::time_point mark_ = Clock::now();
};

void flatten(const Json& j, const std::string& prefix, Json& out) {
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else {
        out[prefix] = j;
    }
}

std::string csv_cell(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

/// One row per item, columns are the union of flattened keys in first-seen order.
std::string to_csv(const Json& items) {
    std::vector<Json> rows;
    std::vector<std::string> columns;
    for (const auto& item : items) {
        Json flat = Json::object();
        flatten(item, "", flat);
        for (auto& [k, v] : flat.items()) {
            if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
        }
        rows.push_back(std::move(flat));
    }
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_cell(columns[i]);
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            if (row.contains(columns[i])) out += csv_cell(row[columns[i]]);
        }
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- shared flag groups ---------------------------------------------------

struct LatticeFlags {
    std::string lattice;
    std::string q;
    std::string chi = "trivial";
    std::string x;
    std::string y;
    std::string t;
    double tol = 1e-9;
    bool allow_imprimitive = false;

    void add_to(CLI::App& app, bool need_lattice = true) {
        auto* l = app.add_option("--lattice", lattice, "basis rows, e.g. \"2,1;0,3\"");
        if (need_lattice) l->required();
        app.add_option("--q", q, "character modulus (defaults to the character's)");
        app.add_option("--chi", chi, "trivial | principal:q | kronecker:D | JSON; ';' between coordinates");
        app.add_option("--x", x, "integer vector, default 0");
        app.add_option("--y", y, "shift vector, rationals p/q or decimals, default 0");
        app.add_option("--tol", tol, "absolute tolerance");
        app.add_flag("--allow-imprimitive", allow_imprimitive, "accept imprimitive characters");
    }

    struct Parsed {
        RationalMatrix basis;
        Lattice lattice;
        std::vector<CharacterSpec> chi_specs;
        DirichletCharacterFamily chi;
        IntVector x;
        Shift y;
    };

    Parsed parse(const std::string& default_lattice = "") const {
        const RationalMatrix basis = parse_matrix(lattice.empty() ? default_lattice : lattice, "--lattice");
        const std::size_t n = basis.rows();
        auto specs = parse_character_family(chi, n, "--chi");
        std::vector<DirichletCharacter> comps;
        for (const auto& s : specs) comps.push_back(s.build());
        DirichletCharacterFamily family(std::move(comps));
        if (!q.empty()) {
            const IntVector qv = parse_int_list(q, "--q");
            if (qv.size() != 1 || qv[0] < 1) throw ParseError("--q", "expected one positive integer");
            if (qv[0] != family.modulus()) {
                if (family.modulus() == 1 && specs.front().kind == CharacterSpec::Kind::Trivial) {
                    throw ParseError("--q", "q = " + std::to_string(qv[0]) +
                                                " needs a character modulo q (e.g. --chi principal:" +
                                                std::to_string(qv[0]) + ")");
                }
                throw ParseError("--q", "q = " + std::to_string(qv[0]) + " but the character has modulus " +
                                            std::to_string(family.modulus()));
            }
        }
        IntVector xv = x.empty() ? IntVector(n, 0) : parse_int_list(x, "--x");
        if (xv.size() != n) throw ParseError("--x", "expected " + std::to_string(n) + " entries");
        Shift yv = y.empty() ? Shift::zero(n) : parse_shift(y, "--y");
        if (yv.size() != n) throw ParseError("--y", "expected " + std::to_string(n) + " entries");
        return Parsed{basis, new_lattice(basis), std::move(specs), std::move(family), std::move(xv), std::move(yv)};
    }

    Json config_json(const Parsed& p) const {
        Json c;
        c["lattice"] = format_matrix(p.basis);
        Json chis = Json::array();
        for (const auto& s : p.chi_specs) chis.push_back(format_character(s));
        c["chi"] = chis;
        c["x"] = p.x;
        if (p.y.is_exact()) {
            Json ys = Json::array();
            for (const auto& v : p.y.rational()) ys.push_back(to_string(v));
            c["y"] = ys;
        } else {
            c["y"] = p.y.values();
        }
        c["tolerance"] = tol;
        c["allow_imprimitive"] = allow_imprimitive;
        return c;
    }
};

template <class T>
std::vector<T> broadcast(std::vector<T> v, std::size_t n, const std::string& field) {
    if (v.size() == 1) v.resize(n, v.front());
    if (v.size() != n) throw ParseError(field, "expected 1 or " + std::to_string(n) + " entries");
    return v;
}

Json complex_list_json(const std::vector<Complex>& v) {
    Json j = Json::array();
    for (auto z : v) j.push_back(complex_json(z));
    return j;
}

SumOptions sum_options(double tol, bool allow_imprimitive, const GlobalOptions& g) {
    if (!(tol > 0.0)) throw ParseError("--tol", "tolerance must be positive");
    SumOptions so;
    so.tolerance = tol;
    so.allow_imprimitive = allow_imprimitive;
    so.threads = g.threads;
    return so;
}

struct CodeFlags {
    std::int64_t m = 2;
    std::size_t n = 0;
    std::string generators;
    std::string parity;
    std::string code;

    void add_to(CLI::App& app) {
        app.add_option("--m", m, "alphabet size");
        app.add_option("--n", n, "code length");
        auto* g = app.add_option("--generators", generators, "generator words separated by ';'");
        auto* p = app.add_option("--parity-check", parity, "parity-check words separated by ';'");
        auto* c = app.add_option("--code", code, "full spec, e.g. m=2,n=3,gen=111");
        g->excludes(p)->excludes(c);
        p->excludes(c);
    }

    CodeSpec spec() const {
        if (!code.empty()) return parse_code(code, "--code");
        if (m < 2) throw ParseError("--m", "modulus must be >= 2");
        if (n < 1) throw ParseError("--n", "length must be >= 1");
        CodeSpec s;
        s.m = m;
        s.n = n;
        s.parity = !parity.empty();
        s.rows = parse_words(s.parity ? parity : generators, m, n, s.parity ? "--parity-check" : "--generators");
        return s;
    }
};

Json polynomial_json(const WeightEnumerator& w) {
    Json j = Json::object();
    for (const auto& [exps, coeff] : w.terms()) {
        std::string key;
        for (std::size_t i = 0; i < exps.size(); ++i) key += (i ? "," : "") + std::to_string(exps[i]);
        j[key] = coeff;
    }
    return j;
}

IntVector code_shift(const std::string& text, std::size_t n) {
    if (text.empty()) return IntVector(n, 0);
    IntVector x = parse_int_list(text, "--x");
    if (x.size() != n) throw ParseError("--x", "expected " + std::to_string(n) + " entries");
    return x;
}

// --- commands ----------------------------------------------------------------

using Handler = std::function<void(Report&)>;

struct Command {
    CLI::App* app;
    Handler handler;
};

InitialData parse_u0(const std::string& text, std::size_t n, const Lattice& lattice) {
    if (text == "delta") return InitialData::delta(n);
    if (text == "ones") return InitialData::ones(n);
    if (text.rfind("coset:", 0) == 0) {
        const LinearCode code = parse_code(text.substr(6), "--u0").build();
        if (code.length() != n) throw ParseError("--u0", "code length differs from the lattice dimension");
        return InitialData::coset(code);
    }
    if (text.rfind("table:", 0) == 0) {
        const std::string path = text.substr(6);
        const Json j = Json::parse(read_file(path), nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw ParseError("--u0", path + ": not a JSON object");
        try {
            std::vector<double> values = j.at("values").get<std::vector<double>>();
            if (j.contains("periods")) {
                IntVector periods = j.at("periods").get<IntVector>();
                if (periods.size() != n) throw ParseError("--u0", path + ": periods must have " + std::to_string(n) + " entries");
                return InitialData::periodic(std::move(periods), std::move(values));
            }
            const std::int64_t radius = j.at("radius").get<std::int64_t>();
            if (radius < 0) throw ParseError("--u0", path + ": radius must be >= 0");
            HeatState state(lattice, radius);
            if (values.size() != state.size()) {
                throw ParseError("--u0", path + ": expected " + std::to_string(state.size()) + " values for radius " +
                                             std::to_string(radius));
            }
            state.values() = std::move(values);
            return InitialData::window(state);
        } catch (const Json::exception& e) {
            throw ParseError("--u0", path + ": " + e.what());
        }
    }
    throw ParseError("--u0", "expected delta, ones, coset:<code spec> or table:<file>");
}

} // namespace

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunResult run(const std::vector<std::string>& args) {
    CLI::App app{"Bessel lattice sums, theta and eta checks, code enumerators and lattice heat kernels"};
    app.name("besselsum");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    std::optional<int> threads_flag;
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", threads_flag, "worker threads (BESSELSUM_THREADS)");
    app.add_flag("--no-meta", g.no_meta, "omit timings for byte-identical output");

    std::vector<Command> commands;

    // verify-identity
    LatticeFlags vi;
    std::string vi_t;
    {
        auto* sub = app.add_subcommand("verify-identity", "both sides of the character Bessel lattice identity");
        vi.add_to(*sub);
        sub->add_option("--t", vi_t, "complex t, one value or one per coordinate, e.g. 1+0.5i")->required();
        commands.push_back({sub, [&](Report& rep) {
                                const auto p = vi.parse();
                                const auto t = broadcast(parse_complex_list(vi_t, "--t"), p.basis.rows(), "--t");
                                const SumOptions so = sum_options(vi.tol, vi.allow_imprimitive, g);
                                rep.config = vi.config_json(p);
                                rep.config["t"] = complex_list_json(t);
                                rep.item("identity", verify_identity(p.lattice, p.chi, p.x, p.y, t, so));
                            }});
    }

    // theta-check
    LatticeFlags tc;
    std::string tc_t;
    {
        auto* sub = app.add_subcommand("theta-check", "Gaussian form of the character theta transformation");
        tc.add_to(*sub);
        sub->add_option("--t", tc_t, "positive real t, one value or one per coordinate")->required();
        commands.push_back({sub, [&](Report& rep) {
                                const auto p = tc.parse();
                                const auto t = broadcast(parse_double_list(tc_t, "--t"), p.basis.rows(), "--t");
                                for (double v : t)
                                    if (!(v > 0.0)) throw ParseError("--t", "entries must be positive");
                                const SumOptions so = sum_options(tc.tol, tc.allow_imprimitive, g);
                                rep.config = tc.config_json(p);
                                rep.config["t"] = t;
                                rep.item("theta_transformation", theta_char_sides(p.lattice, p.chi, p.x, p.y, t, so));
                            }});
    }

    // eta-check
    std::vector<double> tau_parts;
    double eta_tol = 1e-12;
    {
        auto* sub = app.add_subcommand("eta-check", "eta transformation, periodicity and route agreement");
        sub->add_option("--tau", tau_parts, "real and imaginary part")->expected(2)->required();
        sub->add_option("--tol", eta_tol, "absolute tolerance");
        commands.push_back({sub, [&](Report& rep) {
                                const Complex tau(tau_parts[0], tau_parts[1]);
                                if (!(tau.imag() > 0.0)) throw ParseError("--tau", "imaginary part must be positive");
                                if (!(eta_tol > 0.0)) throw ParseError("--tol", "tolerance must be positive");
                                rep.config = {{"tau", complex_json(tau)}, {"tolerance", eta_tol}};
                                rep.item("transformation", eta_transformation_check(tau, eta_tol));
                                const EtaRoutes routes = dedekind_eta(tau);
                                rep.item("series_vs_product",
                                         {{"series", complex_json(routes.series.value)},
                                          {"series_tail_bound", routes.series.tail_bound},
                                          {"product", complex_json(routes.product.value)},
                                          {"product_tail_bound", routes.product.tail_bound},
                                          {"abs_residual", routes.route_difference},
                                          {"tolerance", eta_tol}},
                                         routes.route_difference < eta_tol);
                                const Complex shifted = dedekind_eta(tau + 1.0).series.value;
                                const Complex expected =
                                    std::exp(Complex(0.0, std::numbers::pi / 12.0)) * routes.series.value;
                                const double res = std::abs(shifted - expected);
                                rep.item("periodicity",
                                         {{"lhs", complex_json(shifted)},
                                          {"rhs", complex_json(expected)},
                                          {"abs_residual", res},
                                          {"tolerance", eta_tol}},
                                         res < eta_tol);
                            }});
    }

    // continuum-limit
    LatticeFlags cl;
    std::string cl_t = "0.5";
    std::string cl_L = "8,16,32,64";
    {
        auto* sub = app.add_subcommand("continuum-limit", "Bessel identity rescaled towards its Gaussian limit");
        cl.add_to(*sub, false);
        sub->add_option("--t", cl_t, "positive real t");
        sub->add_option("--L", cl_L, "increasing list of scales");
        commands.push_back({sub, [&](Report& rep) {
                                const auto p = cl.parse("1");
                                const auto t = broadcast(parse_double_list(cl_t, "--t"), p.basis.rows(), "--t");
                                for (double v : t)
                                    if (!(v > 0.0)) throw ParseError("--t", "entries must be positive");
                                const IntVector Ls = parse_int_list(cl_L, "--L");
                                ContinuumLimitSchedule schedule{Ls, p.lattice, p.chi, p.x, p.y, t};
                                try {
                                    schedule.validate();
                                } catch (const std::invalid_argument& e) {
                                    throw ParseError("--L", e.what());
                                }
                                const SumOptions so = sum_options(cl.tol, cl.allow_imprimitive, g);
                                rep.config = cl.config_json(p);
                                rep.config["t"] = t;
                                rep.config["L"] = Ls;
                                const auto rows = continuum_limit_probe(schedule, so);
                                bool decreasing = true;
                                Json residuals = Json::array();
                                for (std::size_t i = 0; i < rows.size(); ++i) {
                                    const auto& row = rows[i];
                                    IdentityReport ir = make_report(row.lhs, row.rhs, cl.tol);
                                    ir.lhs_tail_bound = row.lhs_tail_bound;
                                    Json body = report_json(ir);
                                    body.erase("verdict");
                                    body.erase("lhs_truncation_radius");
                                    body["L"] = row.L;
                                    body["limit"] = complex_json(row.limit);
                                    body["limit_residual"] = row.limit_residual;
                                    rep.item("L=" + std::to_string(row.L), body, ir.passed());
                                    residuals.push_back(row.limit_residual);
                                    if (i > 0 && !(row.limit_residual < rows[i - 1].limit_residual)) decreasing = false;
                                }
                                rep.item("limit_residuals_decreasing", {{"limit_residuals", residuals}}, decreasing);
                            }});
    }

    // theta-identity
    double ti_t = 0.0;
    std::string ti_L;
    double ti_tol = 1e-13;
    {
        auto* sub = app.add_subcommand("theta-identity", "Jacobi theta identity and its modular form");
        sub->add_option("--t", ti_t, "positive real t")->required();
        sub->add_option("--tol", ti_tol, "absolute tolerance");
        sub->add_option("--precursor-L", ti_L, "scales for the discrete precursor table");
        commands.push_back({sub, [&](Report& rep) {
                                if (!(ti_t > 0.0)) throw ParseError("--t", "t must be positive");
                                if (!(ti_tol > 0.0)) throw ParseError("--tol", "tolerance must be positive");
                                rep.config = {{"t", ti_t}, {"tolerance", ti_tol}};
                                rep.item("identity", jacobi_theta_identity_check(ti_t, ti_tol));
                                rep.item("modular", jacobi_theta_modular_check(ti_t, ti_tol));
                                if (!ti_L.empty()) {
                                    const IntVector Ls = parse_int_list(ti_L, "--precursor-L");
                                    rep.config["precursor_L"] = Ls;
                                    Json table = Json::array();
                                    for (auto L : Ls) {
                                        if (L < 1) throw ParseError("--precursor-L", "scales must be >= 1");
                                        table.push_back({{"L", L}, {"value", jacobi_discrete_precursor(L, ti_t)}});
                                    }
                                    rep.tables["precursor"] = table;
                                }
                            }});
    }

    // code-cwe
    CodeFlags cc;
    std::string cc_x;
    std::string cc_t = "1";
    double cc_tol = 1e-9;
    {
        auto* sub = app.add_subcommand("code-cwe", "complete weight enumerator and its Bessel evaluation");
        cc.add_to(*sub);
        sub->add_option("--x", cc_x, "integer shift, default 0");
        sub->add_option("--t", cc_t, "complex t values, ',' separated");
        sub->add_option("--tol", cc_tol, "absolute tolerance");
        commands.push_back({sub, [&](Report& rep) {
                                const CodeSpec spec = cc.spec();
                                const LinearCode code = spec.build();
                                const IntVector x = code_shift(cc_x, code.length());
                                const auto ts = parse_complex_list(cc_t, "--t");
                                const SumOptions so = sum_options(cc_tol, false, g);
                                rep.config = {{"code", format_code(spec)}, {"x", x}, {"t", complex_list_json(ts)},
                                              {"tolerance", cc_tol}};
                                const WeightEnumerator w = cwe(code, x);
                                rep.item("enumerator",
                                         {{"size", code.size()},
                                          {"coset_in_code", code.contains([&] {
                                               IntVector r = x;
                                               for (auto& v : r) v = positive_mod(v, code.modulus());
                                               return r;
                                           }())},
                                          {"polynomial", polynomial_json(w)},
                                          {"value_at_ones", w.value_at_ones()},
                                          {"tolerance", 0}},
                                         w.value_at_ones() == static_cast<std::int64_t>(code.size()));
                                for (const Complex t : ts) {
                                    Json body = report_json(verify_cwe_bessel(code, x, t, so));
                                    body["t"] = complex_json(t);
                                    const bool ok = body["verdict"] == "pass";
                                    body.erase("verdict");
                                    rep.item("cwe_bessel", body, ok);
                                }
                            }});
    }

    // code-macwilliams
    CodeFlags cm;
    std::string cm_x;
    std::string cm_t = "1";
    double cm_tol = 1e-9;
    {
        auto* sub = app.add_subcommand("code-macwilliams", "MacWilliams identity in Bessel and Hamming form");
        cm.add_to(*sub);
        sub->add_option("--x", cm_x, "integer shift, default 0");
        sub->add_option("--t", cm_t, "complex t values, ',' separated");
        sub->add_option("--tol", cm_tol, "absolute tolerance");
        commands.push_back({sub, [&](Report& rep) {
                                const CodeSpec spec = cm.spec();
                                const LinearCode code = spec.build();
                                const LinearCode dual = dual_code(code);
                                const IntVector x = code_shift(cm_x, code.length());
                                const auto ts = parse_complex_list(cm_t, "--t");
                                if (!(cm_tol > 0.0)) throw ParseError("--tol", "tolerance must be positive");
                                rep.config = {{"code", format_code(spec)}, {"x", x}, {"t", complex_list_json(ts)},
                                              {"tolerance", cm_tol}};
                                std::int64_t total = 1;
                                for (std::size_t j = 0; j < code.length(); ++j) total *= code.modulus();
                                const auto product = static_cast<std::int64_t>(code.size() * dual.size());
                                rep.item("size_product",
                                         {{"size", code.size()}, {"dual_size", dual.size()}, {"product", product},
                                          {"m_pow_n", total}, {"tolerance", 0}},
                                         product == total);
                                rep.item("dual_lattice_relation", {{"tolerance", 0}}, dual_lattice_relation_holds(code));
                                const HammingEnumerator w = hamming_we(code);
                                const HammingEnumerator wd = hamming_we(dual);
                                bool exact = false;
                                Json transformed;
                                try {
                                    const HammingEnumerator tr = hamming_macwilliams_transform(
                                        w, code.modulus(), static_cast<std::int64_t>(code.size()));
                                    transformed = tr.coefficients;
                                    exact = tr == wd;
                                } catch (const std::domain_error& e) {
                                    transformed = e.what();
                                }
                                rep.item("hamming_transform",
                                         {{"code", w.coefficients}, {"dual", wd.coefficients},
                                          {"transformed", transformed}, {"tolerance", 0}},
                                         exact);
                                rep.tables["dual_cwe"] = polynomial_json(cwe(dual));
                                for (const Complex t : ts) {
                                    const MacWilliamsReport mr = verify_macwilliams_bessel(code, x, t, cm_tol);
                                    Json body = report_json(mr.coset);
                                    body.erase("verdict");
                                    body["t"] = complex_json(t);
                                    rep.item("macwilliams_bessel", body, mr.coset.passed());
                                    if (mr.diagonal) {
                                        Json d = report_json(*mr.diagonal);
                                        d.erase("verdict");
                                        d["t"] = complex_json(t);
                                        rep.item("macwilliams_dual_cwe", d, mr.diagonal->passed());
                                    }
                                }
                            }});
    }

    // heat-kernel
    std::string hk_lattice = "1";
    double hk_t = 1.0;
    std::string hk_points;
    double hk_tol = 1e-12;
    {
        auto* sub = app.add_subcommand("heat-kernel", "heat kernel values and total mass");
        sub->add_option("--lattice", hk_lattice, "basis rows");
        sub->add_option("--t", hk_t, "time t >= 0")->required();
        sub->add_option("--y", hk_points, "lattice points separated by ';', default the origin");
        sub->add_option("--tol", hk_tol, "tolerance on |mass - 1|");
        commands.push_back({sub, [&](Report& rep) {
                                const RationalMatrix basis = parse_matrix(hk_lattice, "--lattice");
                                const Lattice lattice = new_lattice(basis);
                                const std::size_t n = basis.rows();
                                if (!(hk_t >= 0.0)) throw ParseError("--t", "t must be >= 0");
                                std::vector<RationalVector> points;
                                if (hk_points.empty()) points.emplace_back(n, Rational(0));
                                std::stringstream ss(hk_points);
                                for (std::string part; std::getline(ss, part, ';');) {
                                    const Shift s = parse_shift(part, "--y");
                                    if (!s.is_exact()) throw ParseError("--y", "lattice points must be exact");
                                    if (s.size() != n) throw ParseError("--y", "expected " + std::to_string(n) + " entries");
                                    points.push_back(s.rational());
                                }
                                rep.config = {{"lattice", format_matrix(basis)}, {"t", hk_t}, {"tolerance", hk_tol}};
                                for (const auto& y : points) {
                                    Json yj = Json::array();
                                    for (const auto& v : y) yj.push_back(to_string(v));
                                    const double v = heat_kernel(lattice, y, hk_t);
                                    rep.item("kernel", {{"y", yj}, {"value", v}, {"tolerance", 0}}, v >= 0.0);
                                }
                                const std::int64_t R = heat_kernel_radius(n, hk_t, 1e-15);
                                HeatState box(lattice, R, hk_t);
                                std::vector<double> terms;
                                for (std::size_t i = 0; i < box.size(); ++i)
                                    terms.push_back(heat_kernel_index(n, box.index_of(i), hk_t));
                                std::sort(terms.begin(), terms.end());
                                double mass = 0.0;
                                for (double v : terms) mass += v;
                                const double tail = heat_kernel_tail(n, R, hk_t);
                                rep.item("mass",
                                         {{"mass", mass}, {"radius", R}, {"tail_bound", tail},
                                          {"abs_residual", std::abs(mass - 1.0)}, {"tolerance", hk_tol}},
                                         std::abs(mass - 1.0) < hk_tol + tail);
                            }});
    }

    // heat-solve
    std::string hs_lattice = "1";
    double hs_t = 1.0;
    std::string hs_u0 = "delta";
    std::int64_t hs_radius = 5;
    bool hs_oracle = false;
    double hs_step = 0.0;
    double hs_tol = 1e-6;
    std::int64_t hs_box = -1;
    {
        auto* sub = app.add_subcommand("heat-solve", "lattice heat equation by kernel convolution");
        sub->add_option("--lattice", hs_lattice, "basis rows");
        sub->add_option("--t", hs_t, "final time")->required();
        sub->add_option("--u0", hs_u0, "delta | ones | coset:<code spec> | table:<file>");
        sub->add_option("--radius", hs_radius, "index window radius for the reported values");
        sub->add_flag("--oracle", hs_oracle, "compare against RK4");
        sub->add_option("--step", hs_step, "RK4 step, default t/ceil(10t)");
        sub->add_option("--box", hs_box, "RK4 box radius for window data, default max(radius, 40)");
        sub->add_option("--tol", hs_tol, "tolerance for the oracle comparison");
        commands.push_back({sub, [&](Report& rep) {
                                const RationalMatrix basis = parse_matrix(hs_lattice, "--lattice");
                                const Lattice lattice = new_lattice(basis);
                                const std::size_t n = basis.rows();
                                if (!(hs_t >= 0.0)) throw ParseError("--t", "t must be >= 0");
                                if (hs_radius < 0) throw ParseError("--radius", "radius must be >= 0");
                                if (hs_step < 0.0) throw ParseError("--step", "step must be >= 0");
                                const InitialData u0 = parse_u0(hs_u0, n, lattice);
                                rep.config = {{"lattice", format_matrix(basis)}, {"t", hs_t}, {"u0", hs_u0},
                                              {"radius", hs_radius}, {"oracle", hs_oracle}};
                                const HeatSolution sol = heat_solve_convolution(lattice, u0, hs_t, hs_radius);
                                Json values = Json::array();
                                for (std::size_t i = 0; i < sol.state.size(); ++i)
                                    values.push_back({{"k", sol.state.index_of(i)}, {"value", sol.state.values()[i]},
                                                      {"error_bound", sol.error_bound}});
                                rep.tables["solution"] = values;
                                rep.item("convolution",
                                         {{"kernel_radius", sol.kernel_radius}, {"error_bound", sol.error_bound},
                                          {"tolerance", hs_tol}},
                                         sol.error_bound < hs_tol);
                                if (hs_oracle) {
                                    std::int64_t box = hs_box >= 0 ? hs_box : std::max<std::int64_t>(hs_radius, 40);
                                    if (u0.rule() == InitialData::Rule::Periodic) box = hs_radius;
                                    if (box < hs_radius) throw ParseError("--box", "box must cover the window");
                                    rep.config["step"] = hs_step;
                                    rep.config["box"] = box;
                                    const HeatState rk = heat_solve_ode_oracle(lattice, u0, hs_t, box, hs_step);
                                    double err = 0.0;
                                    for (std::size_t i = 0; i < sol.state.size(); ++i) {
                                        const IntVector k = sol.state.index_of(i);
                                        err = std::max(err, std::abs(sol.state.values()[i] - rk.at(k)));
                                    }
                                    rep.item("rk4_oracle",
                                             {{"max_error", err}, {"box_radius", box},
                                              {"error_bound", sol.error_bound}, {"tolerance", hs_tol}},
                                             err < hs_tol + sol.error_bound);
                                }
                                if (hs_u0.rfind("coset:", 0) == 0 && basis == RationalMatrix::identity(n)) {
                                    const LinearCode code = parse_code(hs_u0.substr(6), "--u0").build();
                                    double err = 0.0;
                                    double imag = 0.0;
                                    for (std::size_t i = 0; i < sol.state.size(); ++i) {
                                        const CodeHeatValue v = code_heat_solution(code, sol.state.index_of(i), hs_t);
                                        err = std::max(err, std::abs(v.value - sol.state.values()[i]));
                                        if (v.cwe_value) err = std::max(err, std::abs(*v.cwe_value - v.value));
                                        imag = std::max(imag, std::abs(v.imaginary_part));
                                    }
                                    rep.item("dual_code_form",
                                             {{"max_disagreement", err}, {"max_imaginary_part", imag},
                                              {"error_bound", sol.error_bound}, {"tolerance", 1e-8}},
                                             err < 1e-8 + sol.error_bound);
                                }
                            }});
    }

    // eta-probe
    std::string ep_L = "5,7,11,13,25";
    double ep_t = 1.0;
    {
        auto* sub = app.add_subcommand("eta-probe", "heat-kernel approximation of the eta function");
        sub->add_option("--L", ep_L, "scales coprime to 12");
        sub->add_option("--t", ep_t, "positive time")->required();
        commands.push_back({sub, [&](Report& rep) {
                                if (!(ep_t > 0.0)) throw ParseError("--t", "t must be positive");
                                const IntVector Ls = parse_int_list(ep_L, "--L");
                                if (Ls.size() < 2) throw ParseError("--L", "need at least two scales");
                                rep.config = {{"L", Ls}, {"t", ep_t}};
                                const double target = eta_probe_target(ep_t);
                                Json table = Json::array();
                                std::vector<double> diffs;
                                for (auto L : Ls) {
                                    if (L < 1) throw ParseError("--L", "scales must be >= 1");
                                    const ProbeValue p = eta_heat_probe(L, ep_t);
                                    diffs.push_back(std::abs(p.value - target));
                                    table.push_back({{"L", L}, {"probe", p.value}, {"tail_bound", p.tail_bound},
                                                     {"radius", p.radius}, {"difference", diffs.back()}});
                                }
                                rep.tables["probe"] = table;
                                rep.item("difference_decreases",
                                         {{"target", target}, {"first", diffs.front()}, {"last", diffs.back()},
                                          {"tolerance", 0}},
                                         diffs.back() < diffs.front());
                            }});
    }

    // suite
    bool suite_quick = false;
    {
        auto* sub = app.add_subcommand("suite", "acceptance criteria 1 to 10");
        sub->add_flag("--quick", suite_quick, "fewer random lattices in criterion 1");
        commands.push_back({sub, [&](Report& rep) {
                                rep.config = {{"quick", suite_quick}};
                                SuiteOptions so;
                                so.quick = suite_quick;
                                so.threads = g.threads;
                                for (const CriterionResult& c : run_suite(so)) {
                                    Json body = {{"criterion", c.id}, {"title", c.title}, {"detail", c.detail}};
                                    body["data"] = c.data;
                                    rep.item("criterion " + std::to_string(c.id), body, c.passed);
                                }
                            }});
    }

    RunResult result;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        return result;
    } catch (const CLI::CallForAllHelp&) {
        result.out = app.help("", CLI::AppFormatMode::All);
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = 2;
        result.err = std::string("error: ") + e.what() + "\n";
        return result;
    }

    if (threads_flag) {
        g.threads = *threads_flag;
    } else if (const char* env = std::getenv("BESSELSUM_THREADS")) {
        try {
            g.threads = static_cast<int>(parse_int_list(env, "BESSELSUM_THREADS").at(0));
        } catch (const std::exception& e) {
            result.exit_code = 2;
            result.err = std::string("error: ") + e.what() + "\n";
            return result;
        }
    }
    if (g.threads < 1) {
        result.exit_code = 2;
        result.err = "error: --threads: must be >= 1\n";
        return result;
    }

    for (const Command& c : commands) {
        if (!c.app->parsed()) continue;
        Report rep(c.app->get_name(), g);
        try {
            c.handler(rep);
        } catch (const ParseError& e) {
            result.exit_code = 2;
            result.err = std::string("error: ") + e.what() + "\n";
            return result;
        } catch (const SingularBasis& e) {
            result.exit_code = 2;
            result.err = std::string("error: --lattice: ") + e.what() + "\n";
            return result;
        } catch (const TruncationFailure& e) {
            result.exit_code = 1;
            result.err = std::string("computation failed: ") + e.what() + "\n";
            return result;
        } catch (const TermBudgetExceeded& e) {
            result.exit_code = 1;
            result.err = std::string("computation failed: ") + e.what() + "\n";
            return result;
        } catch (const QuadratureNotConverged& e) {
            result.exit_code = 1;
            result.err = std::string("computation failed: ") + e.what() + "\n";
            return result;
        } catch (const Error& e) {
            // remaining library errors reject their inputs
            result.exit_code = 2;
            result.err = std::string("error: ") + e.what() + "\n";
            return result;
        } catch (const std::invalid_argument& e) {
            result.exit_code = 2;
            result.err = std::string("error: ") + e.what() + "\n";
            return result;
        } catch (const std::exception& e) {
            result.exit_code = 1;
            result.err = std::string("computation failed: ") + e.what() + "\n";
            return result;
        }
        const Json doc = rep.to_json(args);
        if (g.format == "csv") {
            result.out = to_csv(rep.items());
            const Json tables = doc.value("tables", Json::object());
            for (const auto& [name, table] : tables.items())
                result.out += "\n# " + name + "\n" + to_csv(table.is_array() ? table : Json::array({table}));
        } else {
            result.out = doc.dump(2) + "\n";
        }
        result.exit_code = rep.passed() ? 0 : 1;
        if (!rep.passed()) result.err = "verification failed\n";
        return result;
    }
    result.exit_code = 2;
    result.err = "error: no subcommand\n";
    return result;
}

} // namespace besselsum::cli
