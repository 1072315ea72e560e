#include "dpfq/ff/bipoly.hpp"

#include <algorithm>

#include "dpfq/error.hpp"

namespace dpfq::ff {

int BiPoly::deg_y() const noexcept {
    int d = static_cast<int>(coeffs.size()) - 1;
    while (d >= 0 && coeffs[d].is_zero()) --d;
    return d;
}

int BiPoly::deg_x() const noexcept {
    int d = -1;
    for (const UniPoly& c : coeffs) d = std::max(d, c.degree());
    return d;
}

UniPoly BiPoly::at_x(const FieldTower& tower, const Elem& a) const {
    int lvl = tower.level_of(a);
    std::vector<Elem> c;
    for (const UniPoly& p : coeffs) c.push_back(p.is_zero() ? a.field()->zero() : tower.embed(p, lvl).eval(a));
    return UniPoly(*a.field(), std::move(c));
}

Elem BiPoly::eval(const FieldTower& tower, const Elem& a, const Elem& b) const { return at_x(tower, a).eval(b); }

namespace {

int coefficient_level(const FieldTower& tower, const BiPoly& f) {
    if (f.field) {
        for (int i = 0; i < tower.num_levels(); ++i)
            if (&tower.level(i) == f.field) return i;
    }
    return 0;
}

}  // namespace

UniPoly resultant_y(const FieldTower& tower, const BiPoly& f, const BiPoly& g) {
    int df = f.deg_y(), dg = g.deg_y();
    if (df < 0 || dg < 0) throw InvalidArgument("resultant_y: zero polynomial");
    int src = std::max(coefficient_level(tower, f), coefficient_level(tower, g));
    int bound = dg * std::max(f.deg_x(), 0) + df * std::max(g.deg_x(), 0);
    int lvl = -1;
    for (int i = src; i < tower.num_levels(); ++i)
        if (!tower.level(i).order_fits() || tower.level(i).order() > static_cast<uint64_t>(bound)) {
            lvl = i;
            break;
        }
    if (lvl < 0) return resultant_y_sylvester(f, g);

    const Field& L = tower.level(lvl);
    std::vector<Elem> xs, ys;
    for (int i = 0; i <= bound; ++i) {
        Elem a = L.from_index(static_cast<uint64_t>(i));
        xs.push_back(a);
        ys.push_back(resultant(f.at_x(tower, a), g.at_x(tower, a), df, dg));
    }
    UniPoly r = interpolate(xs, ys);
    std::vector<Elem> c;
    for (const Elem& e : r.coeffs()) c.push_back(tower.descend(e, src));
    return UniPoly(tower.level(src), std::move(c));
}

UniPoly poly_determinant(std::vector<std::vector<UniPoly>> m) {
    size_t n = m.size();
    if (n == 0) throw InvalidArgument("determinant of empty matrix");
    const Field* F = nullptr;
    for (auto& row : m)
        for (auto& e : row)
            if (e.field_ptr()) F = e.field_ptr();
    if (!F) throw InvalidArgument("determinant: entries carry no field");
    UniPoly one = UniPoly::constant(F->one());
    UniPoly prev = one;
    bool negate = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return UniPoly(*F);
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    UniPoly d = m[n - 1][n - 1];
    return negate ? UniPoly(*F) - d : d;
}

UniPoly resultant_y_sylvester(const BiPoly& f, const BiPoly& g) {
    int df = f.deg_y(), dg = g.deg_y();
    if (df < 0 || dg < 0) throw InvalidArgument("resultant_y: zero polynomial");
    const Field& F = f.field ? *f.field : *g.field;
    int n = df + dg;
    if (n == 0) return UniPoly::constant(F.one());
    std::vector<std::vector<UniPoly>> s(n, std::vector<UniPoly>(n, UniPoly(F)));
    for (int r = 0; r < dg; ++r)
        for (int j = 0; j <= df; ++j) s[r][r + j] = f.coeffs[df - j];
    for (int r = 0; r < df; ++r)
        for (int j = 0; j <= dg; ++j) s[dg + r][r + j] = g.coeffs[dg - j];
    return poly_determinant(std::move(s));
}

}  // namespace dpfq::ff
