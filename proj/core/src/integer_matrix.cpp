#include "besselsum/integer_matrix.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace besselsum {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix: row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

RationalMatrix IntMatrix::to_rational() const {
    RationalMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    return r;
}

IntVector multiply(const IntVector& v, const IntMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vector/matrix shape mismatch");
    IntVector out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

IntVector multiply(const IntMatrix& m, const IntVector& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("matrix/vector shape mismatch");
    IntVector out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
    const auto r = a % m;
    return r < 0 ? r + m : r;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    auto q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

HermiteForm hermite_normal_form(const IntMatrix& input) {
    HermiteForm out;
    out.form = input;
    out.transform = IntMatrix::identity(input.rows());
    IntMatrix& h = out.form;
    IntMatrix& u = out.transform;

    std::size_t r = 0;
    for (std::size_t col = 0; col < h.cols() && r < h.rows(); ++col) {
        // Euclid down the column until a single nonzero entry remains at row r.
        while (true) {
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i) {
                if (h(i, col) != 0 &&
                    (best == h.rows() || std::llabs(h(i, col)) < std::llabs(h(best, col)))) {
                    best = i;
                }
            }
            if (best == h.rows()) break;
            swap_rows(h, r, best);
            swap_rows(u, r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, col) == 0) continue;
                const auto f = h(i, col) / h(r, col);
                add_row(h, i, r, f);
                add_row(u, i, r, f);
                if (h(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (h(r, col) == 0) continue;
        if (h(r, col) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        const auto pivot = h(r, col);
        for (std::size_t i = 0; i < r; ++i) {
            const auto f = floor_div(h(i, col), pivot);
            add_row(h, i, r, f);
            add_row(u, i, r, f);
        }
        out.pivot_columns.push_back(col);
        ++r;
    }
    out.rank = r;
    return out;
}

SmithForm smith_normal_form(const IntMatrix& input) {
    SmithForm out;
    out.diagonal = input;
    out.left = IntMatrix::identity(input.rows());
    out.right = IntMatrix::identity(input.cols());
    IntMatrix& d = out.diagonal;
    IntMatrix& u = out.left;
    IntMatrix& v = out.right;

    const std::size_t rows = d.rows();
    const std::size_t cols = d.cols();
    const std::size_t steps = std::min(rows, cols);

    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (d(i, j) != 0 &&
                        (bi == rows || std::llabs(d(i, j)) < std::llabs(d(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows) break; // trailing block is zero
            swap_rows(d, t, bi);
            swap_rows(u, t, bi);
            swap_cols(d, t, bj);
            swap_cols(v, t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                const auto f = floor_div(d(i, t), d(t, t));
                add_row(d, i, t, f);
                add_row(u, i, t, f);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                const auto f = floor_div(d(t, j), d(t, t));
                add_col(d, j, t, f);
                add_col(v, j, t, f);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into row t and go again.
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(d, t, i, -1);
                        add_row(u, t, i, -1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (d(t, t) < 0) {
            negate_row(d, t);
            negate_row(u, t);
        }
    }
    out.invariants.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) out.invariants.push_back(d(t, t));
    return out;
}

std::vector<IntVector> kernel_generators_mod(const IntMatrix& rows, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("kernel_generators_mod: modulus must be positive");
    const std::size_t n = rows.cols();
    // left * rows * right = D. With x = right * z, rows·x ≡ 0 iff D z ≡ 0 (mod m).
    const SmithForm snf = smith_normal_form(rows);
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t di = i < snf.invariants.size() ? snf.invariants[i] : 0;
        const std::int64_t g = std::gcd(di, m); // gcd(0, m) = m: coordinate is free
        const std::int64_t step = m / g;
        IntVector x(n);
        bool nonzero = false;
        for (std::size_t r = 0; r < n; ++r) {
            x[r] = positive_mod(snf.right(r, i) * step, m);
            nonzero = nonzero || x[r] != 0;
        }
        if (nonzero) gens.push_back(std::move(x));
    }
    return gens;
}

} // namespace besselsum
