#include "besselsum/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

#include "besselsum/errors.hpp"

namespace besselsum {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("RationalMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::diagonal(const RationalVector& d) {
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("RationalMatrix: shape mismatch");
    RationalMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
    RationalMatrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

Rational RationalMatrix::determinant() const {
    if (!is_square()) throw std::invalid_argument("determinant of non-square matrix");
    RationalMatrix m = *this;
    const std::size_t n = rows_;
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col) == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col) == 0) continue;
            const Rational f = m(r, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return det;
}

RationalMatrix RationalMatrix::inverse() const {
    if (!is_square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = rows_;
    RationalMatrix m = *this;
    RationalMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col) == 0) ++pivot;
        if (pivot == n) throw SingularBasis("matrix is singular");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const Rational p = m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m(r, col) == 0) continue;
            const Rational f = m(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

bool RationalMatrix::is_integral() const {
    for (const auto& x : data_)
        if (x.denominator() != 1) return false;
    return true;
}

std::int64_t RationalMatrix::common_denominator() const {
    std::int64_t d = 1;
    for (const auto& x : data_) d = std::lcm(d, x.denominator());
    return d;
}

RationalVector multiply(const RationalVector& v, const RationalMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vector/matrix shape mismatch");
    RationalVector out(m.cols(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

RationalVector multiply(const IntVector& v, const RationalMatrix& m) {
    return multiply(to_rational(v), m);
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const IntVector& a, const RationalVector& b) { return dot(to_rational(a), b); }

std::int64_t floor_of(const Rational& r) {
    const auto n = r.numerator();
    const auto d = r.denominator(); // always positive
    auto q = n / d;
    if ((n % d != 0) && (n < 0)) --q;
    return q;
}

std::int64_t ceil_of(const Rational& r) { return -floor_of(-r); }

Rational abs_of(const Rational& r) { return r < 0 ? -r : r; }

Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

bool is_integer(const Rational& r) { return r.denominator() == 1; }

RationalVector to_rational(const IntVector& v) {
    RationalVector out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(x);
    return out;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    }
    return value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace besselsum
