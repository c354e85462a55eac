#include "besselsum/lattice.hpp"

#include <stdexcept>

#include "besselsum/errors.hpp"

namespace besselsum {

IntMatrix Lattice::integer_basis() const {
    if (!integral_) throw NotIntegral("lattice basis has non-integer entries");
    IntMatrix m(basis_.rows(), basis_.cols());
    for (std::size_t i = 0; i < basis_.rows(); ++i)
        for (std::size_t j = 0; j < basis_.cols(); ++j) m(i, j) = basis_(i, j).numerator();
    return m;
}

RationalVector Lattice::point(const IntVector& k) const { return multiply(k, basis_); }

Lattice new_lattice(const RationalMatrix& basis) {
    if (!basis.is_square() || basis.rows() == 0) {
        throw std::invalid_argument("lattice basis must be a non-empty square matrix");
    }
    const Rational det = basis.determinant();
    if (det == 0) throw SingularBasis("lattice basis is singular (det A = 0)");
    Lattice l;
    l.basis_ = basis;
    l.inverse_ = basis.inverse();
    l.gram_ = basis * basis.transpose();
    l.covolume_ = abs_of(det);
    l.integral_ = basis.is_integral();
    return l;
}

Lattice new_lattice(const IntMatrix& basis) { return new_lattice(basis.to_rational()); }

Lattice dual_lattice(const Lattice& lattice) { return new_lattice(lattice.basis_inverse().transpose()); }

bool contains(const Lattice& lattice, const RationalVector& v) {
    if (v.size() != lattice.dimension()) throw std::invalid_argument("contains: dimension mismatch");
    for (const auto& c : multiply(v, lattice.basis_inverse()))
        if (!is_integer(c)) return false;
    return true;
}

std::vector<IntVector> coset_representatives(const Lattice& lattice) {
    const HermiteForm hnf = hermite_normal_form(lattice.integer_basis());
    const std::size_t n = lattice.dimension();
    IntVector sizes(n);
    for (std::size_t i = 0; i < n; ++i) sizes[i] = hnf.form(i, i);

    std::vector<IntVector> reps;
    IntVector r(n, 0);
    while (true) {
        reps.push_back(r);
        std::size_t i = 0;
        while (i < n && ++r[i] == sizes[i]) r[i++] = 0;
        if (i == n) break;
    }
    return reps;
}

std::vector<IndexRange> coefficient_bounds(const RationalMatrix& basis_inverse, const RationalVector& center,
                                           const Rational& half_width) {
    // k = p·A^{-1}; |p_j − c_j| <= h bounds k_i by (c·A^{-1})_i ± h Σ_j |A^{-1}_{ji}|.
    const std::size_t n = basis_inverse.rows();
    const RationalVector mid = multiply(center, basis_inverse);
    std::vector<IndexRange> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational spread = 0;
        for (std::size_t j = 0; j < n; ++j) spread += abs_of(basis_inverse(j, i));
        out[i].lo = ceil_of(mid[i] - half_width * spread);
        out[i].hi = floor_of(mid[i] + half_width * spread);
    }
    return out;
}

std::vector<WeightedPoint> lattice_points_in_box(const Lattice& lattice, const RationalVector& center,
                                                 const Rational& half_width) {
    const std::size_t n = lattice.dimension();
    if (center.size() != n) throw std::invalid_argument("lattice_points_in_box: dimension mismatch");
    if (half_width < 0) throw std::invalid_argument("lattice_points_in_box: negative half width");

    const auto bounds = coefficient_bounds(lattice.basis_inverse(), center, half_width);
    for (const auto& b : bounds)
        if (b.lo > b.hi) return {};

    std::vector<WeightedPoint> out;
    IntVector k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = bounds[i].lo;
    const Rational half(1, 2);
    while (true) {
        RationalVector p = lattice.point(k);
        Rational weight = 1;
        bool inside = true;
        for (std::size_t j = 0; j < n && inside; ++j) {
            const Rational d = abs_of(center[j] - p[j]);
            if (d > half_width) inside = false;
            else if (d == half_width) weight *= half;
        }
        if (inside) out.push_back({std::move(p), weight, k});

        // odometer, last index fastest so output is lexicographic in k
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (k[i] < bounds[i].hi) {
                ++k[i];
                break;
            }
            k[i] = bounds[i].lo;
            if (i == 0) return out;
        }
    }
}

std::vector<WeightedDualPoint> dual_points_in_box(const Lattice& lattice) {
    return dual_points_in_box(lattice, RationalVector(lattice.dimension(), Rational(0)));
}

std::vector<WeightedDualPoint> dual_points_in_box(const Lattice& lattice, const RationalVector& y) {
    if (!lattice.is_integral()) throw NotIntegral("dual_points_in_box requires an integral lattice");
    return lattice_points_in_box(dual_lattice(lattice), y, Rational(1, 2));
}

std::vector<IndexRange> shifted_point_bounds(const IntMatrix& b, const IntVector& x, std::int64_t radius) {
    RationalVector centre(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) centre[j] = Rational(-x[j]);
    return coefficient_bounds(b.to_rational().inverse(), centre, Rational(radius));
}

void visit_shifted_points(const IntMatrix& b, const IntVector& x, std::int64_t radius,
                          const std::vector<IndexRange>& bounds,
                          const std::function<void(const IntVector&, const IntVector&)>& visit) {
    const std::size_t n = b.rows();
    for (const auto& r : bounds)
        if (r.lo > r.hi) return;
    IntVector k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = bounds[i].lo;
    IntVector o(n);
    while (true) {
        bool inside = true;
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t v = x[j];
            for (std::size_t i = 0; i < n; ++i) v += k[i] * b(i, j);
            o[j] = v;
            if (v > radius || v < -radius) inside = false;
        }
        if (inside) visit(k, o);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (k[i] < bounds[i].hi) {
                ++k[i];
                break;
            }
            k[i] = bounds[i].lo;
            if (i == 0) return;
        }
    }
}

} // namespace besselsum
