#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "dpfq/ff/field.hpp"

namespace dpfq::ff {

/// Dense univariate polynomial over a Field, low degree first.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(const Field& f) : f_(&f) {}
    UniPoly(const Field& f, std::vector<Elem> coeffs);

    static UniPoly constant(const Elem& c);
    static UniPoly x(const Field& f);
    /// x^n.
    static UniPoly monomial(const Field& f, int n);
    /// Coefficients given as integers reduced into the prime field.
    static UniPoly from_ints(const Field& f, std::initializer_list<int64_t> coeffs);

    const Field& field() const noexcept { return *f_; }
    const Field* field_ptr() const noexcept { return f_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    /// Coefficient of x^i; zero beyond the degree.
    Elem operator[](int i) const;
    Elem lead() const;

    Elem eval(const Elem& x) const;
    UniPoly monic() const;
    UniPoly derivative() const;
    /// Applies x -> x^(q^i) to every coefficient.
    UniPoly frobenius(int i = 1) const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Elem& c) const;
    UniPoly operator%(const UniPoly& o) const;
    UniPoly operator/(const UniPoly& o) const;
    bool operator==(const UniPoly& o) const;
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void trim();
    const Field* f_ = nullptr;
    std::vector<Elem> c_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// base^e mod m.
UniPoly powmod(const UniPoly& base, uint64_t e, const UniPoly& m);
/// g^(q^n) mod m, with q the size of the coefficient field's base.
UniPoly frobenius_powmod(const UniPoly& g, int n, const UniPoly& m);

/// Squarefree factorization: pairs (factor, multiplicity), factors monic squarefree and coprime.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f);
/// Product of the distinct monic irreducible factors of f.
UniPoly squarefree_part(const UniPoly& f);

/// Distinct-degree factorization of a squarefree polynomial: degree d -> product of its
/// irreducible factors of degree d (monic).
std::map<int, UniPoly> ddf(const UniPoly& f);
/// Splits a squarefree product of irreducibles of degree d into its irreducible factors.
std::vector<UniPoly> edf(const UniPoly& f, int d, std::mt19937_64& rng);
/// Full factorization into monic irreducibles with multiplicity, sorted by (degree, coefficients).
std::vector<std::pair<UniPoly, int>> factor(const UniPoly& f, uint64_t seed = 0);
bool is_irreducible(const UniPoly& f);

/// Number of distinct roots of f in its own coefficient field, deg gcd(f, x^Q - x).
int count_roots(const UniPoly& f);
/// All distinct roots of f in its own coefficient field, sorted.
std::vector<Elem> roots(const UniPoly& f, uint64_t seed = 0);

/// Resultant of f and g viewed with formal degrees df >= deg f and dg >= deg g.
Elem resultant(const UniPoly& f, const UniPoly& g, int df, int dg);
inline Elem resultant(const UniPoly& f, const UniPoly& g) { return resultant(f, g, f.degree(), g.degree()); }

/// Interpolating polynomial through (xs[i], ys[i]); xs pairwise distinct.
UniPoly interpolate(const std::vector<Elem>& xs, const std::vector<Elem>& ys);

}  // namespace dpfq::ff
