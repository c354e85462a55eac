#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace boost {
// Non-template match for comparisons against int literals under C++20 rewritten operators.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a.denominator() == 1 && a.numerator() == b; }
} // namespace boost

namespace besselsum {

using Rational = boost::rational<std::int64_t>;
using RationalVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix diagonal(const RationalVector& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& rhs) const;
    RationalMatrix scaled(const Rational& s) const;

    /// Determinant by fraction-exact Gaussian elimination.
    Rational determinant() const;
    /// Exact inverse; throws SingularBasis when the matrix is singular.
    RationalMatrix inverse() const;

    bool is_integral() const;
    /// Least common multiple of all entry denominators.
    std::int64_t common_denominator() const;

    bool operator==(const RationalMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Row vector times matrix: v·M.
RationalVector multiply(const RationalVector& v, const RationalMatrix& m);
RationalVector multiply(const IntVector& v, const RationalMatrix& m);

Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const IntVector& a, const RationalVector& b);

std::int64_t floor_of(const Rational& r);
std::int64_t ceil_of(const Rational& r);
Rational abs_of(const Rational& r);
/// Fractional part in [0, 1).
Rational frac_of(const Rational& r);
double to_double(const Rational& r);
bool is_integer(const Rational& r);

RationalVector to_rational(const IntVector& v);

/// Parses "p", "-p" or "p/q".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

} // namespace besselsum
