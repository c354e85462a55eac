#pragma once

#include <cstdint>
#include <vector>

#include "besselsum/rational.hpp"

namespace besselsum {

/// Dense row-major integer matrix. Rows are lattice generators throughout the library.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    IntVector column(std::size_t j) const;
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;

    RationalMatrix to_rational() const;

    bool operator==(const IntMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

IntVector multiply(const IntVector& v, const IntMatrix& m);
IntVector multiply(const IntMatrix& m, const IntVector& v);

/// Row-style Hermite normal form: `transform * input == form`. The first `rank` rows of
/// `form` are in echelon shape with positive pivots; entries above each pivot are reduced
/// into [0, pivot). Remaining rows are zero. `transform` is unimodular.
struct HermiteForm {
    IntMatrix form;
    IntMatrix transform;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

HermiteForm hermite_normal_form(const IntMatrix& input);

/// Smith normal form: `left * input * right == diagonal`, with the invariant factors
/// d_0 | d_1 | ... on the diagonal (zeros last). `left`, `right` are unimodular.
struct SmithForm {
    IntMatrix diagonal;
    IntMatrix left;
    IntMatrix right;
    std::vector<std::int64_t> invariants;
};

SmithForm smith_normal_form(const IntMatrix& input);

/// Solutions of `rows · xᵀ ≡ 0 (mod m)` over Z/mZ, returned as a generating set
/// (entries reduced into [0, m)).
std::vector<IntVector> kernel_generators_mod(const IntMatrix& rows, std::int64_t m);

std::int64_t positive_mod(std::int64_t a, std::int64_t m);

} // namespace besselsum
