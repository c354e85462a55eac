#include "besselsum_cli/parse.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

namespace besselsum::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::int64_t to_int(std::string_view s, const std::string& field) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(field, "expected an integer, got '" + std::string(s) + "'");
    }
    return v;
}

double to_double(std::string_view s, const std::string& field) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(field, "expected a number, got '" + std::string(s) + "'");
    }
    return v;
}

Rational to_rational(std::string_view s, const std::string& field) {
    s = trim(s);
    const std::size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(to_int(s, field));
    const std::int64_t den = to_int(s.substr(slash + 1), field);
    if (den == 0) throw ParseError(field, "zero denominator in '" + std::string(s) + "'");
    return Rational(to_int(s.substr(0, slash), field), den);
}

} // namespace

RationalMatrix parse_matrix(std::string_view text, const std::string& field) {
    text = trim(text);
    if (text.empty()) throw ParseError(field, "empty matrix");
    const auto rows = split(text, ';');
    const std::size_t n = rows.size();
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto cells = split(rows[i], ',');
        if (cells.size() != n) {
            throw ParseError(field, "row " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) +
                                        " entries, expected " + std::to_string(n) + " (matrix must be square)");
        }
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = to_rational(cells[j], field + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
    }
    return m;
}

std::string format_matrix(const RationalMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i > 0) out += ';';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ',';
            out += to_string(m(i, j));
        }
    }
    return out;
}

IntVector parse_int_list(std::string_view text, const std::string& field) {
    IntVector out;
    for (auto part : split(trim(text), ',')) out.push_back(to_int(part, field));
    return out;
}

std::vector<double> parse_double_list(std::string_view text, const std::string& field) {
    std::vector<double> out;
    for (auto part : split(trim(text), ',')) out.push_back(to_double(part, field));
    return out;
}

Shift parse_shift(std::string_view text, const std::string& field) {
    const auto parts = split(trim(text), ',');
    bool exact = true;
    for (auto p : parts)
        if (p.find_first_of(".eE") != std::string_view::npos) exact = false;
    if (exact) {
        RationalVector v;
        for (auto p : parts) v.push_back(to_rational(p, field));
        return Shift::exact(std::move(v));
    }
    std::vector<double> v;
    for (auto p : parts) v.push_back(to_double(p, field));
    return Shift::approximate(std::move(v));
}

Complex parse_complex(std::string_view text, const std::string& field) {
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError(field, "empty complex number");
    if (s.back() != 'i') return {to_double(s, field), 0.0};
    s.remove_suffix(1);
    // split at the last sign that is not part of an exponent
    std::size_t split_at = std::string_view::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split_at = i;
            break;
        }
    }
    auto imag_of = [&](std::string_view p) {
        if (p.empty() || p == "+") return 1.0;
        if (p == "-") return -1.0;
        return to_double(p, field);
    };
    if (split_at == std::string_view::npos) return {0.0, imag_of(s)};
    return {to_double(s.substr(0, split_at), field), imag_of(s.substr(split_at))};
}

std::vector<Complex> parse_complex_list(std::string_view text, const std::string& field) {
    std::vector<Complex> out;
    for (auto part : split(trim(text), ',')) out.push_back(parse_complex(part, field));
    return out;
}

DirichletCharacter CharacterSpec::build() const {
    switch (kind) {
    case Kind::Trivial: return principal_character(1);
    case Kind::Principal: return principal_character(parameter);
    case Kind::Kronecker: return kronecker_character(parameter);
    case Kind::Table: return character_from_table(parameter, values);
    }
    throw std::logic_error("unknown character kind");
}

CharacterSpec parse_character(std::string_view text, const std::string& field) {
    const std::string_view s = trim(text);
    CharacterSpec spec;
    if (s == "trivial") return spec;
    if (s.rfind("principal:", 0) == 0) {
        spec.kind = CharacterSpec::Kind::Principal;
        spec.parameter = to_int(s.substr(10), field);
        if (spec.parameter < 1) throw ParseError(field, "modulus must be >= 1");
        return spec;
    }
    if (s.rfind("kronecker:", 0) == 0) {
        spec.kind = CharacterSpec::Kind::Kronecker;
        spec.parameter = to_int(s.substr(10), field);
        return spec;
    }
    if (!s.empty() && s.front() == '{') {
        const auto j = nlohmann::json::parse(s, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw ParseError(field, "invalid JSON character");
        try {
            if (j.contains("kronecker")) {
                spec.kind = CharacterSpec::Kind::Kronecker;
                spec.parameter = j.at("kronecker").get<std::int64_t>();
                return spec;
            }
            spec.kind = CharacterSpec::Kind::Table;
            spec.parameter = j.at("modulus").get<std::int64_t>();
            for (const auto& v : j.at("values")) {
                if (v.is_number()) spec.values.emplace_back(v.get<double>(), 0.0);
                else spec.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(field, std::string("JSON character: ") + e.what());
        }
        return spec;
    }
    throw ParseError(field, "unknown character '" + std::string(s) +
                                "' (expected trivial, principal:q, kronecker:D or a JSON object)");
}

std::string format_character(const CharacterSpec& spec) {
    switch (spec.kind) {
    case CharacterSpec::Kind::Trivial: return "trivial";
    case CharacterSpec::Kind::Principal: return "principal:" + std::to_string(spec.parameter);
    case CharacterSpec::Kind::Kronecker: return "kronecker:" + std::to_string(spec.parameter);
    case CharacterSpec::Kind::Table: {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& v : spec.values) values.push_back({v.real(), v.imag()});
        return nlohmann::json{{"modulus", spec.parameter}, {"values", values}}.dump();
    }
    }
    throw std::logic_error("unknown character kind");
}

std::vector<CharacterSpec> parse_character_family(std::string_view text, std::size_t n, const std::string& field) {
    std::vector<CharacterSpec> out;
    const std::string_view s = trim(text);
    if (!s.empty() && s.front() == '{') {
        out.push_back(parse_character(s, field));
    } else {
        for (auto part : split(s, ';')) out.push_back(parse_character(part, field));
    }
    if (out.size() == 1) out.resize(n, out.front());
    if (out.size() != n) {
        throw ParseError(field, "got " + std::to_string(out.size()) + " characters for dimension " + std::to_string(n));
    }
    return out;
}

std::vector<IntVector> parse_words(std::string_view text, std::int64_t m, std::size_t n, const std::string& field) {
    std::vector<IntVector> rows;
    if (trim(text).empty()) return rows;
    for (auto word : split(trim(text), ';')) {
        IntVector v;
        if (m <= 10 && word.find(':') == std::string_view::npos) {
            for (char c : word) {
                if (c < '0' || c > '9') throw ParseError(field, "bad digit '" + std::string(1, c) + "' in word");
                v.push_back(c - '0');
            }
        } else {
            for (auto cell : split(word, ':')) v.push_back(to_int(cell, field));
        }
        if (v.size() != n) {
            throw ParseError(field, "word '" + std::string(word) + "' has length " + std::to_string(v.size()) +
                                        ", expected n = " + std::to_string(n));
        }
        for (auto x : v)
            if (x < 0 || x >= m) throw ParseError(field, "entry " + std::to_string(x) + " outside [0, m)");
        rows.push_back(std::move(v));
    }
    return rows;
}

CodeSpec parse_code(std::string_view text, const std::string& field) {
    CodeSpec spec;
    bool have_m = false;
    bool have_n = false;
    std::string_view words;
    bool have_words = false;
    // key=value pairs separated by ','; the word list itself never contains ','
    for (auto part : split(trim(text), ',')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string_view::npos) throw ParseError(field, "expected key=value, got '" + std::string(part) + "'");
        const auto key = trim(part.substr(0, eq));
        const auto value = trim(part.substr(eq + 1));
        if (key == "m") {
            spec.m = to_int(value, field + ".m");
            have_m = true;
        } else if (key == "n") {
            const std::int64_t n = to_int(value, field + ".n");
            if (n < 1) throw ParseError(field + ".n", "length must be >= 1");
            spec.n = static_cast<std::size_t>(n);
            have_n = true;
        } else if (key == "gen" || key == "parity") {
            spec.parity = key == "parity";
            words = value;
            have_words = true;
        } else {
            throw ParseError(field, "unknown key '" + std::string(key) + "'");
        }
    }
    if (!have_m || !have_n) throw ParseError(field, "both m and n are required");
    if (spec.m < 2) throw ParseError(field + ".m", "modulus must be >= 2");
    if (!have_words) throw ParseError(field, "gen= or parity= is required");
    spec.rows = parse_words(words, spec.m, spec.n, field + (spec.parity ? ".parity" : ".gen"));
    return spec;
}

std::string format_code(const CodeSpec& spec) {
    std::string out = "m=" + std::to_string(spec.m) + ",n=" + std::to_string(spec.n) + (spec.parity ? ",parity=" : ",gen=");
    for (std::size_t i = 0; i < spec.rows.size(); ++i) {
        if (i > 0) out += ';';
        for (std::size_t j = 0; j < spec.rows[i].size(); ++j) {
            if (spec.m <= 10) {
                out += static_cast<char>('0' + spec.rows[i][j]);
            } else {
                if (j > 0) out += ':';
                out += std::to_string(spec.rows[i][j]);
            }
        }
    }
    return out;
}

LinearCode CodeSpec::build() const {
    if (parity) {
        if (rows.empty()) return dual_code(code_from_generators(m, n, {}));
        return parity_check_code(m, IntMatrix::from_rows(rows, n));
    }
    return code_from_generators(m, n, rows);
}

} // namespace besselsum::cli
