#pragma once

#include <vector>

#include "dpfq/ff/poly.hpp"
#include "dpfq/ff/tower.hpp"

namespace dpfq::ff {

/// Polynomial in y whose coefficients are polynomials in x: sum_j c[j](x) y^j.
struct BiPoly {
    const Field* field = nullptr;
    std::vector<UniPoly> coeffs;  // index = power of y

    int deg_y() const noexcept;
    /// Largest x-degree over all coefficients (-1 for zero).
    int deg_x() const noexcept;
    /// f(a, y), with a in a level of `tower` at or above the coefficient level.
    UniPoly at_x(const FieldTower& tower, const Elem& a) const;
    /// f(a, b) for a, b in the same level.
    Elem eval(const FieldTower& tower, const Elem& a, const Elem& b) const;
};

/// Res_y(f, g) as a polynomial in x, with formal y-degrees deg_y(f), deg_y(g).
///
/// Evaluates at enough points of the smallest tower level with more elements than
/// the degree bound and interpolates; without such a level falls back to the exact
/// Sylvester determinant.
UniPoly resultant_y(const FieldTower& tower, const BiPoly& f, const BiPoly& g);

/// Res_y(f, g) by fraction-free elimination of the Sylvester matrix over F[x].
UniPoly resultant_y_sylvester(const BiPoly& f, const BiPoly& g);

/// Determinant of a square matrix with polynomial entries (Bareiss).
UniPoly poly_determinant(std::vector<std::vector<UniPoly>> m);

}  // namespace dpfq::ff
