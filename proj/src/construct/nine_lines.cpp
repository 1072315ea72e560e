#include "dpfq/construct/nine_lines.hpp"

#include <algorithm>
#include <random>

#include "dpfq/error.hpp"
#include "dpfq/geom/matrix.hpp"

namespace dpfq::construct {

using geom::Matrix;
using geom::ProjLine;
using geom::ProjPoint;

namespace {

constexpr int kMaxConfigAttempts = 200;

Vec embed(const ff::FieldTower& tw, const Vec& v, int level) {
    Vec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(tw.embed(x, level));
    return out;
}

Vec frobenius(const Vec& v, int i = 1) {
    Vec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.frobenius(i));
    return out;
}

std::array<Elem, 4> frobenius(const std::array<Elem, 4>& v, int i = 1) {
    std::array<Elem, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = v[k].frobenius(i);
    return out;
}

Elem dot(const std::array<Elem, 4>& h, const Vec& x) {
    Elem s = x[0].field()->zero();
    for (int k = 0; k < 4; ++k) s += h[k] * x[k];
    return s;
}

std::array<Elem, 4> embed(const ff::FieldTower& tw, const std::array<Elem, 4>& h, int level) {
    std::array<Elem, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = tw.embed(h[k], level);
    return out;
}

CubicForm normalized(const CubicForm& f) {
    for (const auto& c : f.coeffs())
        if (!c.is_zero()) return f * c.inv();
    throw InvalidArgument("zero cubic form");
}

CubicForm map_form(const CubicForm& f, const Field& target, const std::function<Elem(const Elem&)>& phi) {
    return f.map(target, phi);
}

// Zeroes every monomial that involves one of the listed variables.
CubicForm restrict_zero(const CubicForm& f, std::initializer_list<int> vars) {
    auto c = f.coeffs();
    const auto& ex = cubic::cubic_exponents();
    for (int m = 0; m < 20; ++m)
        for (int v : vars)
            if (ex[m][v] > 0) c[m] = f.field().zero();
    return CubicForm(f.field(), c);
}

bool involves(const CubicForm& f, int var) {
    const auto& ex = cubic::cubic_exponents();
    for (int m = 0; m < 20; ++m)
        if (ex[m][var] > 0 && !f[m].is_zero()) return true;
    return false;
}

std::vector<uint64_t> key(const CubicForm& f) {
    std::vector<uint64_t> k;
    for (const auto& c : f.coeffs()) k.push_back(c.index());
    return k;
}

}  // namespace

std::string config_violation(const NineLineConfig& c) {
    const auto& tw = *c.tower;
    if (tw.num_levels() != 3 || tw.level(1).degree() != 3 || tw.level(2).degree() != 9)
        return "tower must have levels of degree 1, 3, 9";
    if (c.center.size() != 4 || c.spokes.size() != 3 || c.points.size() != 9 || c.lines.size() != 9)
        return "wrong number of components";
    for (const auto& x : c.center)
        if (tw.level_of(x) != 0) return "center is not rational";

    Vec center3 = embed(tw, c.center, 1);
    Matrix span = Matrix::from_rows(tw.level(1), {center3, c.directions[0], c.directions[1], c.directions[2]});
    if (span.rank() != 4) return "spokes are coplanar";
    for (int i = 0; i < 3; ++i) {
        if (c.directions[(i + 1) % 3] != frobenius(c.directions[i])) return "directions are not conjugate";
        if (!c.spokes[i].contains(center3)) return "spoke misses the center";
        if (c.spokes[(i + 1) % 3] != c.spokes[i].frobenius()) return "spokes are not conjugate";
        if (c.spokes[i].degree() != 3) return "spoke is not of degree 3";
    }

    std::vector<ProjLine> spokes9;
    for (const auto& s : c.spokes) spokes9.emplace_back(embed(tw, s.a(), 2), embed(tw, s.b(), 2));
    Vec center9 = embed(tw, c.center, 2);
    for (int k = 0; k < 9; ++k) {
        const auto& p = c.points[k];
        if (p.degree() != 9) return "point " + std::to_string(k) + " is not of degree 9";
        if (c.points[(k + 1) % 9] != p.frobenius()) return "points are not conjugate";
        if (!spokes9[k % 3].contains(p.coords())) return "point " + std::to_string(k) + " is off its spoke";
    }

    for (int k = 0; k < 9; ++k) {
        const auto& E = c.lines[k];
        if (!E.contains(c.points[k].coords()) || !E.contains(c.points[(k + 1) % 9].coords()))
            return "line " + std::to_string(k) + " misses its points";
        if (c.lines[(k + 1) % 9] != E.frobenius()) return "lines are not conjugate";
        if (E.contains(center9)) return "line " + std::to_string(k) + " passes through the center";
        for (int j = 0; j < k; ++j)
            if (c.lines[j] == E) return "repeated line";
        for (const auto& s : spokes9)
            if (s == E) return "line equals a spoke";
    }

    for (int i = 0; i < 3; ++i) {
        const auto& h = c.planes[i];
        if (std::all_of(h.begin(), h.end(), [](const Elem& x) { return x.is_zero(); })) return "zero plane";
        if (c.planes[(i + 1) % 3] != frobenius(h)) return "planes are not conjugate";
        if (!dot(h, center3).is_zero()) return "plane misses the center";
        for (int j = 0; j < 3; ++j) {
            bool on = dot(h, c.directions[j]).is_zero();
            if (on != (j != i)) return "plane " + std::to_string(i) + " has the wrong spokes";
        }
        auto h9 = embed(tw, h, 2);
        for (int k = i + 1; k < 9; k += 3)
            for (const auto& pt : {c.lines[k].a(), c.lines[k].b()})
                if (!dot(h9, pt).is_zero()) return "line " + std::to_string(k) + " is not in plane " + std::to_string(i);
    }
    return {};
}

NineLineConfig build_config(uint64_t q, uint64_t seed) {
    NineLineConfig c;
    c.tower = ff::shared_tower(q, {1, 3, 9}, seed);
    c.seed = seed;
    const auto& tw = *c.tower;
    const Field& K = tw.level(0);
    const Field& K3 = tw.level(1);
    const Field& K9 = tw.level(2);
    std::mt19937_64 rng(seed);

    for (int attempt = 1; attempt <= kMaxConfigAttempts; ++attempt) {
        c.attempts = attempt;
        Vec center(4);
        for (auto& x : center) x = K.random(rng);
        Vec d0(4);
        for (auto& x : d0) x = K3.random(rng);
        Elem lambda = K9.random(rng);
        if (lambda.degree() != 9) continue;

        c.center = center;
        c.directions = {d0, frobenius(d0), frobenius(d0, 2)};
        Vec center3 = embed(tw, center, 1);
        if (Matrix::from_rows(K3, {center3, c.directions[0], c.directions[1], c.directions[2]}).rank() != 4) continue;

        c.spokes.clear();
        for (const auto& d : c.directions) c.spokes.emplace_back(center3, d);

        Vec center9 = embed(tw, center, 2);
        Vec d9 = embed(tw, d0, 2);
        Vec p0(4);
        for (int k = 0; k < 4; ++k) p0[k] = center9[k] + lambda * d9[k];
        c.points.clear();
        for (int k = 0; k < 9; ++k) c.points.emplace_back(frobenius(p0, k));
        c.lines.clear();
        for (int k = 0; k < 9; ++k) c.lines.emplace_back(c.points[k], c.points[(k + 1) % 9]);

        auto ker = Matrix::from_rows(K3, {center3, c.directions[1], c.directions[2]}).kernel();
        if (ker.size() != 1) continue;
        std::array<Elem, 4> h0{ker[0][0], ker[0][1], ker[0][2], ker[0][3]};
        c.planes = {h0, frobenius(h0), frobenius(h0, 2)};

        if (config_violation(c).empty()) return c;
    }
    throw InternalError("no valid nine-line configuration within the retry budget");
}

std::vector<CubicForm> CubicPencil::members() const {
    const Field& K = plane_union.field();
    if (!K.order_fits() || K.order() > 1024) throw InvalidArgument("too many pencil members to list");
    std::vector<CubicForm> out{plane_union};
    for (uint64_t i = 0; i < K.order(); ++i) out.push_back(chosen + plane_union * K.from_index(i));
    return out;
}

CubicPencil cubics_through(const NineLineConfig& c) {
    const auto& tw = *c.tower;
    const Field& K = tw.level(0);
    const Field& K9 = tw.level(2);
    const int m = K9.degree();

    // Each line gives 4 conditions over GF(q^9), i.e. 4m conditions over GF(q).
    Matrix A(K, 9 * 4 * m, 20);
    int row = 0;
    for (int k = 0; k < 9; ++k) {
        const Vec& a = c.lines[k].a();
        const Vec& b = c.lines[k].b();
        std::array<std::array<Elem, 4>, 20> along;
        for (int mono = 0; mono < 20; ++mono) {
            std::array<Elem, 20> unit;
            unit.fill(K9.zero());
            unit[mono] = K9.one();
            along[mono] = CubicForm(K9, unit).along(a, b);
        }
        for (int d = 0; d < 4; ++d)
            for (int j = 0; j < m; ++j, ++row)
                for (int mono = 0; mono < 20; ++mono) A.at(row, mono) = K.from_base(along[mono][d].coeff(j));
    }

    CubicPencil P{c.tower, {}, CubicForm(K), CubicForm(K)};
    for (const auto& v : A.kernel()) {
        std::array<Elem, 20> coeffs;
        std::copy(v.begin(), v.end(), coeffs.begin());
        P.basis.emplace_back(K, coeffs);
    }
    if (P.dimension() < 2)
        throw InvalidArgument("cubics through the nine lines form a space of dimension " +
                              std::to_string(P.dimension()));

    CubicForm norm3 = cubic::product_of_linear(c.planes[0], c.planes[1], c.planes[2]);
    P.plane_union = normalized(map_form(norm3, K, [&](const Elem& x) { return tw.descend(x, 0); }));
    if (!in_pencil(P, P.plane_union)) throw InternalError("plane union does not contain the nine lines");

    std::vector<CubicForm> candidates;
    for (const auto& b : P.basis) {
        CubicForm f = normalized(b);
        if (!(f == P.plane_union)) candidates.push_back(f);
    }
    P.chosen = *std::min_element(candidates.begin(), candidates.end(),
                                 [](const CubicForm& x, const CubicForm& y) { return key(x) < key(y); });
    return P;
}

bool in_pencil(const CubicPencil& pencil, const CubicForm& f) {
    const Field& L = f.field();
    int level = pencil.tower->level_of(L.zero());
    std::vector<Vec> rows;
    for (const auto& b : pencil.basis) {
        Vec r;
        for (const auto& x : b.coeffs()) r.push_back(pencil.tower->embed(x, level));
        rows.push_back(r);
    }
    rows.emplace_back(f.coeffs().begin(), f.coeffs().end());
    return Matrix::from_rows(L, rows).rank() == pencil.dimension();
}

CubicForm combine_cubics(const std::array<CubicForm, 3>& P) {
    const Field& K = P[0].field();
    for (int i = 0; i < 3; ++i) {
        if (&P[i].field() != &K) throw InvalidArgument("plane cubics over different fields");
        if (involves(P[i], i + 1))
            throw InvalidArgument("cubic " + std::to_string(i + 1) + " involves x" + std::to_string(i + 1));
        if (!P[i][0].is_one()) throw InvalidArgument("cubic " + std::to_string(i + 1) + " does not have x0^3 coefficient 1");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!(restrict_zero(P[i], {i + 1, j + 1}) == restrict_zero(P[j], {i + 1, j + 1})))
                throw InvalidArgument("cubics " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                      " differ on the common line");

    std::array<Elem, 20> cube;
    cube.fill(K.zero());
    cube[0] = K.one();
    CubicForm out = P[0] + P[1] + P[2] + CubicForm(K, cube);
    out = out + restrict_zero(P[0], {2}) * (-K.one());
    out = out + restrict_zero(P[1], {3}) * (-K.one());
    out = out + restrict_zero(P[2], {1}) * (-K.one());

    for (int i = 0; i < 3; ++i)
        if (!(restrict_zero(out, {i + 1}) == P[i]))
            throw InternalError("glued cubic does not restrict to cubic " + std::to_string(i + 1));
    return out;
}

std::array<CubicForm, 2> glued_pencil(const NineLineConfig& c) {
    const auto& tw = *c.tower;
    const Field& K3 = tw.level(1);
    const Field& K9 = tw.level(2);

    // New coordinates y = A x: y0 a coordinate not vanishing at the center, y_{i+1} the planes.
    int pivot = 0;
    while (c.center[pivot].is_zero()) ++pivot;
    Matrix A(K3, 4, 4);
    A.at(0, pivot) = K3.one();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 4; ++k) A.at(i + 1, k) = c.planes[i][k];
    Matrix A9(K9, 4, 4);
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) A9.at(r, k) = tw.embed(A.at(r, k), 2);

    std::array<CubicForm, 3> P{CubicForm(K3), CubicForm(K3), CubicForm(K3)};
    for (int i = 0; i < 3; ++i) {
        // The three lines in plane i are a Frobenius^3 orbit; their product is defined over GF(q^3).
        const ProjLine& E = c.lines[i + 1];
        Vec e(4, K9.zero());
        e[i + 1] = K9.one();
        auto ker = Matrix::from_rows(K9, {A9.apply(E.a()), A9.apply(E.b()), e}).kernel();
        if (ker.size() != 1) throw InternalError("line is not in its plane");
        std::array<Elem, 4> l{ker[0][0], ker[0][1], ker[0][2], ker[0][3]};
        CubicForm prod = cubic::product_of_linear(l, frobenius(l, 3), frobenius(l, 6));
        CubicForm down = map_form(prod, K3, [&](const Elem& x) { return tw.descend(x, 1); });
        if (down[0].is_zero()) throw InternalError("plane cubic passes through the center");
        P[i] = down * down[0].inv();
    }
    CubicForm glued = combine_cubics(P);

    std::array<Elem, 4> y1{K3.zero(), K3.one(), K3.zero(), K3.zero()};
    std::array<Elem, 4> y2{K3.zero(), K3.zero(), K3.one(), K3.zero()};
    std::array<Elem, 4> y3{K3.zero(), K3.zero(), K3.zero(), K3.one()};
    CubicForm planes = cubic::product_of_linear(y1, y2, y3);
    return {glued.compose(A), planes.compose(A)};
}

C14Construction make_c14_surface(uint64_t q, uint64_t seed) {
    NineLineConfig config = build_config(q, seed);
    CubicPencil pencil = cubics_through(config);
    auto tower = ff::shared_tower(q, {1}, seed);
    cubic::CubicSurface X = cubic::CubicSurface::from_form(tower, pencil.chosen);

    auto smooth = cubic::is_smooth(X);
    if (!smooth.smooth) throw InternalError("chosen pencil member is singular");
    CubicForm f9 = X.form_in(config.tower->level(2));
    for (const auto& E : config.lines)
        if (!f9.contains_line(E.a(), E.b())) throw InternalError("surface misses one of the nine lines");

    auto cls = cubic::classify(X, {seed});
    if (cls.cls->order != 9 || cls.cycle_type != std::vector<int>{9, 9, 9})
        throw InternalError("constructed surface has class " + cls.cls->display_name() + ", expected the order-9 class");
    auto pt = cubic::point_off_lines(X, cls.lines);
    return C14Construction{std::move(config), std::move(pencil), X, smooth, std::move(cls), pt};
}

dp2::ConicBundleSurface dp2_class35_surface() {
    static const std::vector<int64_t> coeffs{1, 0, 1, 0, 0, -1,   // x^2 + xz - z^2
                                             1, 0, 0, 1, 0, 0,    // x^2 + y^2
                                             1, -1, 1, -1, 0, -1};  // x^2 - xy - y^2 + xz - z^2
    return dp2::ConicBundleSurface::from_ints(3, coeffs);
}

}  // namespace dpfq::construct
