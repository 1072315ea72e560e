#include "dpfq/cubic/split.hpp"

#include <map>

#include "dpfq/error.hpp"

namespace dpfq::cubic {

using geom::Matrix;
using geom::ProjPoint;
using geom::Vec;

namespace {

Elem monomial_at(const std::vector<int>& e, const ProjPoint& p) {
    Elem r = p.field().one();
    for (int v = 0; v < 3; ++v) r *= p[v].pow(static_cast<uint64_t>(e[v]));
    return r;
}

Matrix evaluation_matrix(const std::vector<ProjPoint>& pts, int degree) {
    auto mons = monomials(3, degree);
    const Field& F = pts.front().field();
    Matrix m(F, static_cast<int>(pts.size()), static_cast<int>(mons.size()));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < mons.size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = monomial_at(mons[j], pts[i]);
    return m;
}

// Ternary forms as maps from exponent (a, b) of x^a y^b z^(d-a-b) to coefficients.
using Ternary = std::map<std::pair<int, int>, Elem>;

Ternary multiply(const Ternary& f, const Ternary& g) {
    Ternary r;
    for (const auto& [ef, cf] : f)
        for (const auto& [eg, cg] : g) {
            auto key = std::make_pair(ef.first + eg.first, ef.second + eg.second);
            auto it = r.find(key);
            if (it == r.end())
                r.emplace(key, cf * cg);
            else
                it->second += cf * cg;
        }
    return r;
}

}  // namespace

std::string general_position_violation(const std::vector<ProjPoint>& pts) {
    if (pts.size() != 6) return "need exactly six points";
    for (const auto& p : pts)
        if (p.dim() != 2) return "points must lie in P^2";
    const Field& F = pts.front().field();
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = i + 1; j < 6; ++j) {
            if (pts[i] == pts[j]) return "repeated point";
            for (size_t k = j + 1; k < 6; ++k)
                if (Matrix::from_rows(F, {pts[i].coords(), pts[j].coords(), pts[k].coords()}).determinant().is_zero())
                    return "points " + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ", " +
                           std::to_string(k + 1) + " are collinear";
        }
    if (evaluation_matrix(pts, 2).determinant().is_zero()) return "the six points lie on a conic";
    return {};
}

CubicSurface split_cubic_from_points(const std::vector<ProjPoint>& pts, uint64_t seed) {
    if (auto why = general_position_violation(pts); !why.empty()) throw InvalidArgument(why);
    const Field& F = pts.front().field();
    if (F.degree() != 1) throw InvalidArgument("points must be rational over the base field");

    std::vector<Vec> basis = evaluation_matrix(pts, 3).kernel();
    if (basis.size() != 4) throw InternalError("plane cubics through six general points should form a 4-space");
    auto cubic_mons = monomials(3, 3);
    std::array<Ternary, 4> C;
    for (int i = 0; i < 4; ++i)
        for (size_t j = 0; j < cubic_mons.size(); ++j)
            if (!basis[i][j].is_zero()) C[i][{cubic_mons[j][0], cubic_mons[j][1]}] = basis[i][j];

    // Each quaternary cubic monomial in C_0..C_3 becomes a ternary form of degree 9.
    const auto& ex = cubic_exponents();
    auto nonics = monomials(3, 9);
    std::map<std::pair<int, int>, int> row_of;
    for (size_t r = 0; r < nonics.size(); ++r) row_of[{nonics[r][0], nonics[r][1]}] = static_cast<int>(r);
    Matrix sys(F, static_cast<int>(nonics.size()), 20);
    for (int m = 0; m < 20; ++m) {
        Ternary prod{{{0, 0}, F.one()}};
        for (int v = 0; v < 4; ++v)
            for (int k = 0; k < ex[m][v]; ++k) prod = multiply(prod, C[v]);
        for (const auto& [e, c] : prod) sys.at(row_of.at(e), m) = c;
    }
    std::vector<Vec> rel = sys.kernel();
    if (rel.size() != 1) throw InternalError("expected a unique cubic relation, found " + std::to_string(rel.size()));
    std::array<uint8_t, 20> coeffs{};
    for (int m = 0; m < 20; ++m) coeffs[m] = rel[0][m].coeff(0);
    return CubicSurface(ff::shared_tower(F.q(), {1}, seed), coeffs);
}

}  // namespace dpfq::cubic
