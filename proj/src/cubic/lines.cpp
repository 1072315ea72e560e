#include "dpfq/cubic/lines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>

#include "dpfq/error.hpp"
#include "dpfq/ff/bipoly.hpp"
#include "dpfq/ff/poly.hpp"

namespace dpfq::cubic {

using ff::BiPoly;
using ff::FieldTower;
using ff::UniPoly;
using geom::ProjLine;
using geom::Vec;

LineChart chart_of(const ProjLine& line) {
    const Field& F = line.field();
    geom::Matrix m = geom::Matrix::from_rows(F, {line.a(), line.b()});
    std::vector<int> piv = m.rref();
    if (piv.size() != 2) throw InternalError("line spanned by dependent points");
    LineChart c;
    c.i = piv[0];
    c.j = piv[1];
    int k = 0;
    for (int r = 0; r < 2; ++r)
        for (int col = 0; col < 4; ++col)
            if (col != c.i && col != c.j) c.coords[k++] = m.at(r, col);
    return c;
}

int LineSet::index_of(const ProjLine& l) const {
    for (size_t i = 0; i < lines.size(); ++i)
        if (lines[i] == l) return static_cast<int>(i);
    return -1;
}

std::vector<int> LineSet::frobenius_permutation() const {
    std::vector<int> perm;
    for (const auto& l : lines) {
        int k = index_of(l.frobenius());
        if (k < 0) throw InternalError("line set is not Frobenius stable");
        perm.push_back(k);
    }
    return perm;
}

namespace {

std::vector<int> chain(int e, int m) {
    if (e == m) return e == 1 ? std::vector<int>{1} : std::vector<int>{1, e};
    return e == 1 ? std::vector<int>{1, m} : std::vector<int>{1, e, m};
}

}  // namespace

const Field& common_level(uint64_t q, int m, uint64_t seed) { return ff::shared_tower(q, chain(1, m), seed)->top(); }

Elem to_common_level(const Elem& x, int d, int M, uint64_t seed) {
    const Field& src = *x.field();
    uint64_t q = src.q();
    int m = src.degree();
    if (m % d || M % d) throw InvalidArgument("subfield degree must divide both field degrees");
    Elem y = x;
    if (d < m) {
        auto A = ff::shared_tower(q, chain(d, m), seed);
        y = A->descend(ff::transfer(x, A->top()), A->num_levels() - 2);
    }
    if (d == M) return ff::transfer(y, common_level(q, M, seed));
    auto B = ff::shared_tower(q, chain(d, M), seed);
    Elem z = B->embed(ff::transfer(y, B->level(B->num_levels() - 2)), B->num_levels() - 1);
    return ff::transfer(z, common_level(q, M, seed));
}

namespace {

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Elem dot(const std::array<Elem, 4>& g, const Vec& v) { return g[0] * v[0] + g[1] * v[1] + g[2] * v[2] + g[3] * v[3]; }

// At a point P of the surface with gradient G (G1 != 0), the tangent directions are
// spanned by A = (0, -G2, G1, 0) and B = (0, -G3, 0, G1). Along R = vA + B the surface
// meets the line P + uR in u^2 (quad(v)) and u^3 (cubic(v)) terms.
struct Pencil {
    Vec A, B;
    std::array<Elem, 3> quad;   // v^0, v^1, v^2
    std::array<Elem, 4> cubic;  // v^0..v^3
};

Pencil pencil_from(const CubicForm& g, const Vec& P, Vec A, Vec B) {
    Pencil pc;
    pc.A = std::move(A);
    pc.B = std::move(B);
    Elem a = dot(g.gradient(pc.A), P), c = dot(g.gradient(pc.B), P);
    Elem b = dot(g.gradient(add(pc.A, pc.B)), P) - a - c;
    pc.quad = {c, b, a};
    pc.cubic = {g.eval(pc.B), dot(g.gradient(pc.B), pc.A), dot(g.gradient(pc.A), pc.B), g.eval(pc.A)};
    return pc;
}

Pencil pencil_at(const CubicForm& g, const Vec& P) {
    auto G = g.gradient(P);
    const Field& F = g.field();
    return pencil_from(g, P, {F.zero(), -G[2], G[1], F.zero()}, {F.zero(), -G[3], F.zero(), G[1]});
}

// Two tangent directions at a smooth point P that together with P span the tangent plane.
std::optional<Pencil> tangent_pencil(const CubicForm& g, const Vec& P) {
    auto G = g.gradient(P);
    const Field& F = g.field();
    geom::Matrix row(F, 1, 4);
    for (int i = 0; i < 4; ++i) row.at(0, i) = G[i];
    std::vector<Vec> ker = row.kernel();
    if (ker.size() != 3) return std::nullopt;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (geom::Matrix::from_rows(F, {P, ker[i], ker[j]}).rank() == 3) return pencil_from(g, P, ker[i], ker[j]);
    return std::nullopt;
}

Elem pencil_resultant(const CubicForm& g, const Vec& P) {
    Pencil pc = pencil_at(g, P);
    const Field& F = g.field();
    UniPoly qp(F, {pc.quad.begin(), pc.quad.end()});
    UniPoly cp(F, {pc.cubic.begin(), pc.cubic.end()});
    return ff::resultant(qp, cp, 2, 3);
}

constexpr int kPhiDegree = 27;
constexpr int kMaxAttempts = 8;

constexpr int kMaxFrameTries = 512;

struct Attempt {
    const CubicSurface& X;
    int e;
    uint64_t seed;
    uint64_t q;
    std::shared_ptr<const FieldTower> tw;  // GF(q) [, K], W
    int kidx = 0;
    std::optional<geom::Matrix> T;
    std::optional<CubicForm> g;  // f(T x) over K
    std::vector<ProjLine> found;
    std::string outcome;

    Attempt(const CubicSurface& X_, int e_, uint64_t seed_) : X(X_), e(e_), seed(seed_), q(X_.q()) {}

    const Field& K() const { return tw->level(kidx); }

    bool run() {
        int w = e;
        // The evaluation level must exceed the resultant degree bound used by resultant_y.
        while (std::pow(static_cast<double>(q), w) <= 2.0 * 3 * kPhiDegree) w += e;
        if (w > ff::kMaxDegree) return fail("evaluation level too large");
        tw = ff::shared_tower(q, chain(e, w), X.seed());
        kidx = e == 1 ? 0 : 1;
        const Field& Kf = K();
        std::mt19937_64 rng(seed);
        // Resample until the section has a cubic term in z, so that no point of the plane
        // cubic sits at (0:0:1:0) and resultants in z keep their formal degree. Over a small
        // field every point may lie on the surface, so the search is bounded.
        for (int tries = 0;; ++tries) {
            if (tries == kMaxFrameTries) return fail("no point off the surface for the section");
            geom::Matrix t(Kf, 4, 4);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) t.at(r, c) = Kf.random(rng);
            if (t.determinant().is_zero()) continue;
            CubicForm gt = X.form_in(Kf).compose(t);
            if (gt[cubic_index(2, 2, 2)].is_zero()) continue;
            T = t;
            g = gt;
            break;
        }

        BiPoly fH = plane_section();
        BiPoly phi = interpolate_phi();
        if (phi.coeffs.empty()) return fail("degenerate tangent pencil on the section");
        UniPoly res = ff::resultant_y(*tw, fH, phi);
        if (res.is_zero()) return fail("plane section shares a component with the line locus");
        UniPoly sq = ff::squarefree_part(res);
        for (auto& [d, bucket] : ff::ddf(sq)) {
            if (e * d > ff::kMaxDegree) continue;
            std::mt19937_64 frng(seed ^ (0x9e37ull * d));
            for (const UniPoly& factor : ff::edf(bucket, d, frng)) solve_factor(factor, fH, phi, d, false);
        }
        // Points of the section on x0 = 0: (0 : 1 : z : 0) with g(0, 1, z, 0) = 0.
        std::vector<Elem> at_inf(4, K().zero());
        const auto& ex = cubic_exponents();
        for (int m = 0; m < 20; ++m)
            if (ex[m][0] == 0 && ex[m][3] == 0) at_inf[ex[m][2]] += (*g)[m];
        UniPoly inf(K(), at_inf);
        if (inf.is_zero()) return fail("the section contains the line x0 = x3 = 0");
        std::mt19937_64 irng(seed ^ 0x5151);
        for (auto& [d, bucket] : ff::ddf(ff::squarefree_part(inf)))
            for (const UniPoly& factor : ff::edf(bucket, d, irng)) solve_factor(factor, fH, phi, d, true);
        return true;
    }

    // Repeats process_factor over larger levels until every coordinate it meets is rational.
    void solve_factor(const UniPoly& factor, const BiPoly& fH, const BiPoly& phi, int d, bool at_infinity) {
        int ext = 1;
        while (e * d * ext <= ff::kMaxDegree) {
            int need = process_factor(factor, fH, phi, d, ext, at_infinity);
            if (need == 1) return;
            ext = std::lcm(ext, ext * need);
        }
    }

    bool fail(std::string why) {
        outcome = std::move(why);
        return false;
    }

    BiPoly plane_section() const {
        // g(1, y, z, 0) as sum_j c_j(y) z^j.
        const Field& Kf = K();
        BiPoly b;
        b.field = &Kf;
        std::vector<std::vector<Elem>> c(4, std::vector<Elem>(4, Kf.zero()));
        const auto& ex = cubic_exponents();
        for (int m = 0; m < 20; ++m)
            if (ex[m][3] == 0) c[ex[m][2]][ex[m][1]] += (*g)[m];
        for (int j = 0; j < 4; ++j) b.coeffs.emplace_back(Kf, c[j]);
        return b;
    }

    BiPoly interpolate_phi() const {
        int top = tw->num_levels() - 1;
        const Field& W = tw->top();
        CubicForm gw = g->map(W, [&](const Elem& x) { return tw->embed(x, top); });
        int n = kPhiDegree + 1;
        std::vector<Elem> pts;
        for (int i = 0; i < n; ++i) pts.push_back(W.from_index(static_cast<uint64_t>(i)));
        std::vector<UniPoly> in_z;
        for (int i = 0; i < n; ++i) {
            std::vector<Elem> vals;
            for (int j = 0; j < n; ++j) vals.push_back(pencil_resultant(gw, {W.one(), pts[i], pts[j], W.zero()}));
            in_z.push_back(ff::interpolate(pts, vals));
        }
        BiPoly b;
        b.field = &K();
        for (int k = 0; k < n; ++k) {
            std::vector<Elem> vals;
            for (int i = 0; i < n; ++i) vals.push_back(in_z[i][k]);
            UniPoly cy = ff::interpolate(pts, vals);
            std::vector<Elem> c;
            for (const Elem& x : cy.coeffs()) c.push_back(tw->descend(x, kidx));
            b.coeffs.emplace_back(K(), std::move(c));
        }
        while (!b.coeffs.empty() && b.coeffs.back().is_zero()) b.coeffs.pop_back();
        return b;
    }

    // Roots of `factor` (degree d over K) are y-coordinates of points (1 : y : z : 0), or with
    // `at_infinity` z-coordinates of points (0 : 1 : z : 0). Works over GF(q^(e d ext)); returns
    // the extension needed for the z-coordinates to split (1 if they did).
    int process_factor(const UniPoly& factor, const BiPoly& fH, const BiPoly& phi, int d, int ext,
                       bool at_infinity = false) {
        auto rt = ff::shared_tower(q, chain(e, e * d * ext), X.seed());
        int rk = e == 1 ? 0 : 1;
        int top = rt->num_levels() - 1;
        const Field& D = rt->top();
        auto lift = [&](const Elem& x) { return rt->embed(ff::transfer(x, rt->level(rk)), top); };
        auto lift_poly = [&](const UniPoly& p) {
            std::vector<Elem> c;
            for (const Elem& x : p.coeffs()) c.push_back(lift(x));
            return UniPoly(D, std::move(c));
        };
        auto lift_bipoly = [&](const BiPoly& p) {
            BiPoly r;
            r.field = &D;
            for (const UniPoly& c : p.coeffs) r.coeffs.push_back(lift_poly(c));
            return r;
        };
        CubicForm gd = g->map(D, lift);
        geom::Matrix Td(D, 4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) Td.at(r, c) = lift(T->at(r, c));
        BiPoly fHd = lift_bipoly(fH), phid = lift_bipoly(phi);

        Elem y0 = d * ext == 1 ? -(lift_poly(factor).monic()[0])
                               : ff::edf_find_root(*rt, transfer_poly(factor, rt->level(rk)), top, seed);
        int need = 1;
        for (int i = 0; i < d; ++i) {
            Elem y = y0.frobenius(e * i);
            if (at_infinity) {
                need = std::lcm(need, lines_through(gd, Td, {D.zero(), D.one(), y, D.zero()}));
                continue;
            }
            UniPoly h = ff::gcd(fHd.at_x(*rt, y), phid.at_x(*rt, y));
            if (h.degree() < 1) continue;
            auto zs = ff::roots(h, seed);
            if (static_cast<int>(zs.size()) < h.degree())
                for (const auto& [k, part] : ff::ddf(ff::squarefree_part(h))) need = std::lcm(need, k);
            for (const Elem& z : zs) need = std::lcm(need, lines_through(gd, Td, {D.one(), y, z, D.zero()}));
        }
        return need;
    }

    static UniPoly transfer_poly(const UniPoly& p, const Field& target) {
        std::vector<Elem> c;
        for (const Elem& x : p.coeffs()) c.push_back(ff::transfer(x, target));
        return UniPoly(target, std::move(c));
    }

    // Adds the lines of the surface through P; returns the extension of the current level
    // needed for all their directions to be rational (1 if none is missing).
    int lines_through(const CubicForm& gd, const geom::Matrix& Td, const Vec& P) {
        const Field& D = gd.field();
        auto tp = tangent_pencil(gd, P);
        if (!tp) return 1;
        int need = 1;
        const Pencil& pc = *tp;
        std::vector<Vec> dirs;
        UniPoly qp(D, {pc.quad.begin(), pc.quad.end()});
        UniPoly cp(D, {pc.cubic.begin(), pc.cubic.end()});
        UniPoly h = ff::gcd(qp, cp);
        if (h.degree() >= 1) {
            auto vs = ff::roots(h, seed);
            if (static_cast<int>(vs.size()) < h.degree())
                for (const auto& [k, part] : ff::ddf(ff::squarefree_part(h))) need = std::lcm(need, k);
            for (const Elem& v : vs) {
                Vec R = pc.A;
                for (auto& x : R) x *= v;
                dirs.push_back(add(R, pc.B));
            }
        }
        if (pc.quad[2].is_zero() && pc.cubic[3].is_zero()) dirs.push_back(pc.A);
        for (const Vec& R : dirs) {
            if (!gd.contains_line(P, R)) continue;
            Vec a = Td.apply(P), b = Td.apply(R);
            try {
                found.emplace_back(a, b);
            } catch (const InvalidArgument&) {
            }
        }
        return need;
    }
};

// All coordinates go through the same subfield GF(q^d), d the degree of the line, so a
// single embedding is applied to the whole line.
ProjLine to_common(const ProjLine& l, int M, uint64_t seed) {
    LineChart c = chart_of(l);
    int d = l.degree();
    const Field& F = common_level(l.field().q(), M, seed);
    Vec a(4, F.zero()), b(4, F.zero());
    a[c.i] = F.one();
    b[c.j] = F.one();
    int k = 0;
    for (Vec* row : {&a, &b})
        for (int col = 0; col < 4; ++col)
            if (col != c.i && col != c.j) (*row)[col] = to_common_level(c.coords[k++], d, M, seed);
    return ProjLine(a, b);
}

}  // namespace

LineSet find_lines(const CubicSurface& X, uint64_t seed) {
    // Extension schedule: the base field first; small fields then move to GF(q^e) where a
    // random plane is unlikely to contain a line. e * (degree over GF(q^e)) must stay <= 16.
    std::vector<int> schedule;
    if (X.q() >= 17)
        schedule.assign(kMaxAttempts, 1);
    else
        schedule = {1, 1, 2, 2, 3, 4, 2, 3};
    LineSet out;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        uint64_t s = std::mt19937_64(seed * kMaxAttempts + static_cast<uint64_t>(attempt))();
        Attempt at(X, schedule[attempt], s);
        LineAttempt rec{schedule[attempt], s, ""};
        if (!at.run()) {
            rec.outcome = at.outcome;
            out.attempts.push_back(rec);
            continue;
        }
        int M = 1;
        for (const auto& l : at.found) M = std::lcm(M, l.degree());
        if (M > 12) {
            rec.outcome = "line degree above 12";
            out.attempts.push_back(rec);
            continue;
        }
        std::vector<ProjLine> lines;
        for (const auto& l : at.found) {
            ProjLine c = to_common(l, M, X.seed());
            for (int i = 0; i < l.degree(); ++i) {
                ProjLine ci = c.frobenius(i);
                if (std::find(lines.begin(), lines.end(), ci) == lines.end()) lines.push_back(ci);
            }
        }
        std::sort(lines.begin(), lines.end());
        bool ok = lines.size() == 27;
        for (size_t i = 0; ok && i < lines.size(); ++i) {
            int meets = 0;
            for (size_t j = 0; j < lines.size(); ++j)
                if (i != j && lines[i].meets(lines[j])) ++meets;
            ok = meets == 10;
        }
        if (!ok) {
            rec.outcome = "found " + std::to_string(lines.size()) + " lines";
            out.attempts.push_back(rec);
            continue;
        }
        rec.outcome = "ok";
        out.attempts.push_back(rec);
        out.field = &common_level(X.q(), M, X.seed());
        out.common_degree = M;
        out.lines = std::move(lines);
        for (const auto& l : out.lines) out.degrees.push_back(l.degree());
        return out;
    }
    std::string log;
    for (const auto& a : out.attempts) log += " [e=" + std::to_string(a.extension) + ": " + a.outcome + "]";
    throw InternalError("line solver failed after " + std::to_string(kMaxAttempts) + " attempts:" + log);
}

}  // namespace dpfq::cubic
