#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <besselsum/characters.hpp>
#include <besselsum/codes.hpp>
#include <besselsum/integer_matrix.hpp>
#include <besselsum/lattice_sums.hpp>
#include <besselsum/rational.hpp>

namespace besselsum::cli {

/// Malformed command-line input. `field` names the flag or spec component at fault.
class ParseError : public std::invalid_argument {
public:
    ParseError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// "2,1;0,3" → [[2,1],[0,3]]. Entries may be rationals "p/q".
RationalMatrix parse_matrix(std::string_view text, const std::string& field = "lattice");
std::string format_matrix(const RationalMatrix& m);

IntVector parse_int_list(std::string_view text, const std::string& field);
std::vector<double> parse_double_list(std::string_view text, const std::string& field);
/// Rationals when every entry is "p" or "p/q"; decimals make the shift approximate.
Shift parse_shift(std::string_view text, const std::string& field = "y");

/// "1.5", "-2i", "1+0.5i", "1-i".
Complex parse_complex(std::string_view text, const std::string& field = "t");
std::vector<Complex> parse_complex_list(std::string_view text, const std::string& field = "t");

/// One character: "trivial", "principal:q", "kronecker:D", or JSON {"kronecker": D} /
/// {"modulus": q, "values": [[re, im], ...]}.
struct CharacterSpec {
    enum class Kind { Trivial, Principal, Kronecker, Table };
    Kind kind = Kind::Trivial;
    std::int64_t parameter = 1;
    std::vector<Complex> values;

    DirichletCharacter build() const;
    bool operator==(const CharacterSpec&) const = default;
};
CharacterSpec parse_character(std::string_view text, const std::string& field = "chi");
std::string format_character(const CharacterSpec& spec);

/// Components separated by ';'. A single component is repeated n times.
std::vector<CharacterSpec> parse_character_family(std::string_view text, std::size_t n,
                                                  const std::string& field = "chi");

/// "m=2,n=3,gen=111;011" or "m=2,n=3,parity=111". Words are digit strings when m <= 10,
/// otherwise ':'-separated integers.
struct CodeSpec {
    std::int64_t m = 2;
    std::size_t n = 0;
    bool parity = false;
    std::vector<IntVector> rows;

    LinearCode build() const;
    bool operator==(const CodeSpec&) const = default;
};
CodeSpec parse_code(std::string_view text, const std::string& field = "code");
std::string format_code(const CodeSpec& spec);
/// Rows in the word syntax of parse_code, separated by ';'.
std::vector<IntVector> parse_words(std::string_view text, std::int64_t m, std::size_t n, const std::string& field);

} // namespace besselsum::cli
