#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "besselsum/integer_matrix.hpp"
#include "besselsum/rational.hpp"

namespace besselsum {

/// Full-rank lattice Γ = Z^n A generated by the rows of A. Immutable.
class Lattice {
public:
    std::size_t dimension() const noexcept { return basis_.rows(); }
    const RationalMatrix& basis() const noexcept { return basis_; }
    const RationalMatrix& basis_inverse() const noexcept { return inverse_; }
    /// G = A Aᵀ.
    const RationalMatrix& gram() const noexcept { return gram_; }
    /// |det A|.
    Rational covolume() const noexcept { return covolume_; }
    bool is_integral() const noexcept { return integral_; }

    /// The basis as an integer matrix; throws NotIntegral otherwise.
    IntMatrix integer_basis() const;

    /// k·A for integer coefficients k.
    RationalVector point(const IntVector& k) const;

private:
    friend Lattice new_lattice(const RationalMatrix& basis);
    Lattice() = default;

    RationalMatrix basis_;
    RationalMatrix inverse_;
    RationalMatrix gram_;
    Rational covolume_;
    bool integral_ = false;
};

/// Throws SingularBasis when det A = 0 and std::invalid_argument when A is not square.
Lattice new_lattice(const RationalMatrix& basis);
Lattice new_lattice(const IntMatrix& basis);

/// Γ* = Z^n ᵗA^{-1}.
Lattice dual_lattice(const Lattice& lattice);

/// True iff v·A^{-1} ∈ Z^n.
bool contains(const Lattice& lattice, const RationalVector& v);

/// |det A| vectors of Z^n, one per class of Z^n/Γ, read off the Hermite normal form.
/// Throws NotIntegral when Γ ⊄ Z^n.
std::vector<IntVector> coset_representatives(const Lattice& lattice);

/// A lattice point inside a closed box, with its boundary weight.
struct WeightedPoint {
    RationalVector coordinates;
    /// ∏_j w_j with w_j = 1/2 exactly on the box face in coordinate j.
    Rational weight;
    /// Coefficients k with coordinates = k·(basis).
    IntVector integer_preimage;
};
using WeightedDualPoint = WeightedPoint;

/// All points p of the lattice with |center_j − p_j| <= half_width for every j, in
/// lexicographic order of their coefficient vectors.
std::vector<WeightedPoint> lattice_points_in_box(const Lattice& lattice, const RationalVector& center,
                                                 const Rational& half_width);

/// Γ* ∩ [−1/2, 1/2]^n with boundary weights. Throws NotIntegral when Γ ⊄ Z^n.
std::vector<WeightedDualPoint> dual_points_in_box(const Lattice& lattice);

/// Γ* ∩ (y + [−1/2, 1/2]^n), i.e. the dual points with |y_j − γ*_j| <= 1/2.
std::vector<WeightedDualPoint> dual_points_in_box(const Lattice& lattice, const RationalVector& y);

/// Inclusive integer range of coefficient index i over the box (used for enumeration bounds).
struct IndexRange {
    std::int64_t lo = 0;
    std::int64_t hi = -1;
};
std::vector<IndexRange> coefficient_bounds(const RationalMatrix& basis_inverse, const RationalVector& center,
                                           const Rational& half_width);

/// Coefficient box for {k ∈ Z^n : ‖x + k·B‖_∞ <= radius}, B integral and nonsingular.
std::vector<IndexRange> shifted_point_bounds(const IntMatrix& b, const IntVector& x, std::int64_t radius);

/// Calls visit(k, x + k·B) for every k inside `bounds` with ‖x + k·B‖_∞ <= radius, in
/// lexicographic order of k.
void visit_shifted_points(const IntMatrix& b, const IntVector& x, std::int64_t radius,
                          const std::vector<IndexRange>& bounds,
                          const std::function<void(const IntVector&, const IntVector&)>& visit);

} // namespace besselsum
