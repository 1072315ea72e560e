#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "dpfq/ff/field.hpp"
#include "dpfq/geom/matrix.hpp"

namespace dpfq::cubic {

using ff::Elem;
using ff::Field;

/// Exponent vectors of all monomials of the given degree in n variables, in
/// lexicographically descending order (x0^d first).
std::vector<std::vector<int>> monomials(int nvars, int degree);

/// The 20 cubic monomials in x0..x3 in coefficient order:
/// x0^3, x0^2x1, x0^2x2, x0^2x3, x0x1^2, x0x1x2, x0x1x3, x0x2^2, x0x2x3, x0x3^2,
/// x1^3, x1^2x2, x1^2x3, x1x2^2, x1x2x3, x1x3^2, x2^3, x2^2x3, x2x3^2, x3^3.
const std::array<std::array<int, 4>, 20>& cubic_exponents();
/// Position of x_i x_j x_k among the cubic monomials.
int cubic_index(int i, int j, int k);

/// Quaternary cubic form with coefficients in a Field.
class CubicForm {
public:
    explicit CubicForm(const Field& f);
    CubicForm(const Field& f, std::array<Elem, 20> coeffs);

    const Field& field() const noexcept { return *f_; }
    const std::array<Elem, 20>& coeffs() const noexcept { return c_; }
    const Elem& operator[](int i) const { return c_[i]; }
    bool is_zero() const noexcept;

    Elem eval(std::span<const Elem> x) const;
    std::array<Elem, 4> gradient(std::span<const Elem> x) const;
    /// Coefficients of u^0..u^3 in f(p + u r).
    std::array<Elem, 4> along(std::span<const Elem> p, std::span<const Elem> r) const;
    bool contains_line(std::span<const Elem> p, std::span<const Elem> r) const;

    /// x -> f(T x).
    CubicForm compose(const geom::Matrix& T) const;
    /// Applies a field map to every coefficient.
    CubicForm map(const Field& target, const std::function<Elem(const Elem&)>& phi) const;
    CubicForm operator+(const CubicForm& o) const;
    CubicForm operator*(const Elem& s) const;
    bool operator==(const CubicForm& o) const;

private:
    const Field* f_;
    std::array<Elem, 20> c_;
};

/// Product of three linear forms as a cubic form.
CubicForm product_of_linear(const std::array<Elem, 4>& a, const std::array<Elem, 4>& b, const std::array<Elem, 4>& c);

}  // namespace dpfq::cubic
