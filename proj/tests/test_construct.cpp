#include <doctest.h>

#include <random>
#include <set>

#include "dpfq/construct/nine_lines.hpp"
#include "dpfq/error.hpp"
#include "dpfq/weyl/classes.hpp"

using namespace dpfq;
using namespace dpfq::construct;
using cubic::cubic_index;
using geom::Matrix;

namespace {

const std::vector<uint64_t> kFields{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25};

Vec random_vec(const Field& K, std::mt19937_64& rng, int n = 4) {
    Vec v(n);
    for (auto& x : v) x = K.random(rng);
    return v;
}

CubicForm monomial_form(const Field& K, std::initializer_list<std::pair<std::array<int, 3>, Elem>> terms) {
    CubicForm f(K);
    for (const auto& [idx, c] : terms) {
        std::array<Elem, 20> u;
        u.fill(K.zero());
        u[cubic_index(idx[0], idx[1], idx[2])] = c;
        f = f + CubicForm(K, u);
    }
    return f;
}

// Binary cubic in x0 and x_v with x0^3 coefficient 1.
CubicForm edge(const Field& K, int v, std::mt19937_64& rng) {
    return monomial_form(K, {{{0, 0, 0}, K.one()}, {{0, 0, v}, K.random(rng)}, {{0, v, v}, K.random(rng)},
                             {{v, v, v}, K.random(rng)}});
}

// Terms of a plane cubic that vanish on both coordinate lines of the plane.
CubicForm interior(const Field& K, int a, int b, std::mt19937_64& rng) {
    return monomial_form(K, {{{0, a, b}, K.random(rng)}, {{a, a, b}, K.random(rng)}, {{a, b, b}, K.random(rng)}});
}

}  // namespace

TEST_CASE("combine_cubics") {
    auto K = ff::shared_tower(5, {1});
    const Field& F = K->base();
    CubicForm cube = monomial_form(F, {{{0, 0, 0}, F.one()}});
    CHECK(combine_cubics({cube, cube, cube}) == cube);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        // Shared restrictions first: x0,x3 between the first two, x0,x2 between the first and third,
        // x0,x1 between the last two.
        CubicForm e3 = edge(F, 3, rng), e2 = edge(F, 2, rng), e1 = edge(F, 1, rng);
        CubicForm P0 = e3 + e2 + cube * (-F.one()) + interior(F, 2, 3, rng);
        CubicForm P1 = e3 + e1 + cube * (-F.one()) + interior(F, 1, 3, rng);
        CubicForm P2 = e2 + e1 + cube * (-F.one()) + interior(F, 1, 2, rng);
        CubicForm P = combine_cubics({P0, P1, P2});
        // The identities are polynomial; compare values on random points of each plane.
        std::array<CubicForm, 3> parts{P0, P1, P2};
        for (int i = 0; i < 3; ++i)
            for (int s = 0; s < 30; ++s) {
                Vec x = random_vec(F, rng);
                x[i + 1] = F.zero();
                CHECK(P.eval(x) == parts[i].eval(x));
            }
    }

    CubicForm e3 = edge(F, 3, rng), e2 = edge(F, 2, rng), e1 = edge(F, 1, rng);
    CubicForm P0 = e3 + e2 + cube * (-F.one());
    CubicForm P1 = e3 + e1 + cube * (-F.one());
    CubicForm bad = e2 + e1 + cube * (-F.one()) + monomial_form(F, {{{0, 0, 1}, F.one()}});
    CHECK_THROWS_WITH_AS(combine_cubics({P0, P1, bad}), doctest::Contains("2 and 3"), InvalidArgument);
    auto other = ff::shared_tower(8, {1}, 0), other2 = ff::shared_tower(8, {1}, 11);
    CHECK_THROWS_AS(cubic::CubicSurface::from_form(other, monomial_form(other2->base(), {{{0, 1, 2}, other2->base().gen()}})),
                    InvalidArgument);
    CubicForm involves = P0 + monomial_form(F, {{{0, 0, 1}, F.one()}});
    CHECK_THROWS_AS(combine_cubics({involves, P1, e2 + e1 + cube * (-F.one())}), InvalidArgument);
    CHECK_THROWS_AS(combine_cubics({P0 * F.from_int(2), P1, e2 + e1 + cube * (-F.one())}), InvalidArgument);
}

TEST_CASE("nine-line configurations") {
    for (uint64_t q : kFields) {
        CAPTURE(q);
        auto c = build_config(q, 3);
        CHECK(config_violation(c).empty());
        const auto& tw = *c.tower;

        std::set<geom::ProjPoint> orbit;
        for (const auto& p : c.points) orbit.insert(p);
        CHECK(orbit.size() == 9);
        CHECK(geom::galois_orbit(c.points[0]).size() == 9);

        // Non-coplanar: the center and one point of each spoke span P^3.
        std::vector<Vec> rows;
        for (const auto& s : c.spokes) rows.push_back(s.b());
        Vec center3;
        for (const auto& x : c.center) center3.push_back(tw.embed(x, 1));
        CHECK(Matrix::from_rows(tw.level(1), rows).rank() == 3);
        rows.push_back(center3);
        CHECK(Matrix::from_rows(tw.level(1), rows).rank() == 4);

        std::set<std::vector<uint64_t>> keys;
        for (const auto& E : c.lines) {
            std::vector<uint64_t> k;
            for (const auto& x : E.plucker()) k.push_back(x.index());
            keys.insert(k);
            for (const auto& s : c.spokes) {
                std::vector<uint64_t> ks;
                for (const auto& x : s.plucker()) ks.push_back(tw.embed(x, 2).index());
                CHECK(ks != k);
            }
        }
        CHECK(keys.size() == 9);
        // Consecutive lines meet; the lines in one plane pairwise meet.
        for (int k = 0; k < 9; ++k) {
            CHECK(c.lines[k].meets(c.lines[(k + 1) % 9]));
            CHECK(c.lines[k].meets(c.lines[(k + 3) % 9]));
        }
    }

    auto c = build_config(5, 1);
    auto broken = c;
    std::swap(broken.points[0], broken.points[1]);
    CHECK_FALSE(config_violation(broken).empty());
    broken = c;
    std::swap(broken.planes[0], broken.planes[1]);
    CHECK_FALSE(config_violation(broken).empty());
}

TEST_CASE("cubics through the nine lines") {
    std::mt19937_64 rng(2);
    for (uint64_t q : kFields) {
        CAPTURE(q);
        auto c = build_config(q, 5);
        auto P = cubics_through(c);
        CHECK(P.dimension() == 2);
        const auto& tw = *c.tower;
        const Field& K9 = tw.level(2);

        std::vector<CubicForm> forms = P.basis;
        forms.push_back(P.plane_union);
        forms.push_back(P.chosen);
        for (const auto& f : forms) {
            CubicForm f9 = f.map(K9, [&](const Elem& x) { return tw.embed(x, 2); });
            for (const auto& E : c.lines)
                for (int s = 0; s < 10; ++s) CHECK(f9.eval(E.point(K9.random(rng), K9.random(rng))).is_zero());
        }
        CHECK(in_pencil(P, P.plane_union));
        CHECK_FALSE(P.chosen == P.plane_union);

        // The plane union is the product of the three plane forms up to a scalar.
        const Field& K3 = tw.level(1);
        CubicForm u3 = P.plane_union.map(K3, [&](const Elem& x) { return tw.embed(x, 1); });
        Elem ratio;
        for (int s = 0; s < 20; ++s) {
            Vec x = random_vec(K3, rng);
            Elem prod = K3.one();
            for (const auto& h : c.planes) {
                Elem d = K3.zero();
                for (int k = 0; k < 4; ++k) d += h[k] * x[k];
                prod *= d;
            }
            Elem v = u3.eval(x);
            CHECK(prod.is_zero() == v.is_zero());
            if (prod.is_zero()) continue;
            if (ratio.field() == nullptr) ratio = v / prod;
            CHECK(v == ratio * prod);
        }

        // The glued family from the three plane cubics lands in the same space.
        auto glued = glued_pencil(c);
        CHECK(in_pencil(P, glued[0]));
        CHECK(in_pencil(P, glued[1]));
        CHECK_FALSE(glued[0].is_zero());
    }
}

TEST_CASE("the plane union is the only singular member") {
    for (uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
        CAPTURE(q);
        auto c = build_config(q, 11);
        auto P = cubics_through(c);
        auto tower = ff::shared_tower(q, {1}, 11);
        auto members = P.members();
        CHECK(members.size() == q + 1);
        int singular = 0;
        for (size_t i = 0; i < members.size(); ++i) {
            bool smooth = cubic::is_smooth(cubic::CubicSurface::from_form(tower, members[i])).smooth;
            if (!smooth) {
                ++singular;
                CHECK(i == 0);
            }
        }
        CHECK(singular == 1);
    }
}

TEST_CASE("C14 surfaces over every field in the matrix") {
    const auto& e6 = weyl::WeylTable::get(6);
    for (uint64_t q : kFields) {
        CAPTURE(q);
        auto C = make_c14_surface(q, 0);
        const auto& X = C.surface;
        CHECK(C.smoothness.smooth);
        CHECK(C.classification.cls == &e6.by_alias("C14"));
        CHECK(C.classification.cls->order == 9);
        CHECK(C.classification.cycle_type == std::vector<int>{9, 9, 9});
        std::vector<int> degs = C.classification.lines.degrees;
        CHECK(std::count(degs.begin(), degs.end(), 9) == 27);

        auto f9 = X.form_in(C.config.tower->level(2));
        for (const auto& E : C.config.lines) CHECK(f9.contains_line(E.a(), E.b()));

        for (int n = 1; n <= 2; ++n) {
            int64_t qn = 1;
            for (int k = 0; k < n; ++k) qn *= static_cast<int64_t>(q);
            CHECK(static_cast<int64_t>(cubic::count_points(X, n)) ==
                  qn * qn + qn * C.classification.cls->trace(n) + 1);
        }

        // The blow-up point is rational, on X, and on none of the lines.
        const auto& p = C.point_off_lines;
        for (const auto& x : p.coords()) CHECK(x.in_base());
        CHECK(X.form().eval(p.coords()).is_zero());
        const auto& lines = C.classification.lines;
        Vec pM;
        for (const auto& x : p.coords()) pM.push_back(lines.field->from_base(x.coeff(0)));
        for (const auto& L : lines.lines) CHECK_FALSE(L.contains(pM));

        const auto& e7 = weyl::blowup_embed(*C.classification.cls);
        CHECK(e7.alias == "47");
        CHECK(weyl::geiser_twist(e7).alias == "56");
        CHECK(weyl::geiser_twist(e7).order == 18);
    }
}

TEST_CASE("construction is reproducible") {
    auto a = make_c14_surface(4, 9);
    auto b = make_c14_surface(4, 9);
    CHECK(a.surface == b.surface);
    CHECK(a.point_off_lines == b.point_off_lines);
}

TEST_CASE("diagonal family control over GF(7)") {
    // x0^3 = f(x1, x2, x3) reaches the same class for suitable plane cubics f when q = 1 mod 6.
    std::mt19937_64 rng(21);
    const auto& c14 = weyl::WeylTable::get(6).by_alias("C14");
    int found = 0;
    for (int trial = 0; trial < 80 && found == 0; ++trial) {
        std::vector<int64_t> c(20, 0);
        c[0] = 1;
        for (int m = 10; m < 20; ++m) c[m] = static_cast<int64_t>(rng() % 7);
        auto X = cubic::CubicSurface::from_ints(7, c);
        if (!cubic::is_smooth(X).smooth) continue;
        if (cubic::classify(X).cls == &c14) ++found;
    }
    CHECK(found == 1);
}

TEST_CASE("fixed degree-2 surface") {
    auto X = dp2_class35_surface();
    CHECK(X.q() == 3);
    CHECK(dp2::dp2_smooth(X).smooth);
    const auto& cls = dp2::classify_dp2(X);
    CHECK(cls.alias == "35");
    CHECK(weyl::geiser_twist(cls).alias == "28");
}
