#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "dpfq/cubic/classify.hpp"
#include "dpfq/cubic/split.hpp"
#include "dpfq/error.hpp"

using namespace dpfq;
using namespace dpfq::cubic;
using geom::ProjLine;
using geom::ProjPoint;
using geom::Vec;

namespace {

CubicSurface random_smooth(uint64_t q, std::mt19937_64& rng) {
    for (;;) {
        std::array<uint8_t, 20> c{};
        for (auto& x : c) x = static_cast<uint8_t>(rng() % q);
        if (c == std::array<uint8_t, 20>{}) continue;
        CubicSurface X(ff::shared_tower(q, {1}), c);
        if (is_smooth(X).smooth) return X;
    }
}

// Lines of X defined over GF(q^k), found from pairs of points of X over that field.
size_t lines_over(const CubicSurface& X, int k) {
    const Field& F = extension_level(X, k);
    CubicForm f = X.form_in(F);
    std::vector<Vec> pts;
    geom::for_each_proj_point(3, F, [&](const Vec& p) {
        if (f.eval(p).is_zero()) pts.push_back(p);
    });
    std::set<ProjLine> lines;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            ProjLine l(pts[i], pts[j]);
            if (lines.count(l) || !f.contains_line(pts[i], pts[j])) continue;
            lines.insert(l);
        }
    return lines.size();
}

geom::Matrix random_invertible(const Field& F, std::mt19937_64& rng) {
    for (;;) {
        geom::Matrix T(F, 4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) T.at(r, c) = F.random(rng);
        if (!T.determinant().is_zero()) return T;
    }
}

std::vector<ProjPoint> six_general_points(const Field& F, std::mt19937_64& rng) {
    for (;;) {
        std::vector<ProjPoint> pts;
        for (int i = 0; i < 6; ++i) {
            Vec v{F.random(rng), F.random(rng), F.random(rng)};
            if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) break;
            pts.emplace_back(v);
        }
        if (pts.size() == 6 && general_position_violation(pts).empty()) return pts;
    }
}

}  // namespace

TEST_CASE("27 lines with the classical incidences") {
    std::mt19937_64 rng(41);
    for (uint64_t q : {2, 3, 4, 5, 7, 8, 9, 13, 16}) {
        for (int trial = 0; trial < 3; ++trial) {
            auto X = random_smooth(q, rng);
            LineSet L = find_lines(X, trial);
            REQUIRE(L.lines.size() == 27);
            CubicForm f = X.form_in(*L.field);
            std::set<ProjLine> distinct(L.lines.begin(), L.lines.end());
            CHECK(distinct.size() == 27);
            for (size_t i = 0; i < 27; ++i) {
                const auto& l = L.lines[i];
                CHECK(f.contains_line(l.a(), l.b()));
                const auto& p = l.plucker();
                CHECK((p[0] * p[5] - p[1] * p[4] + p[2] * p[3]).is_zero());
                int meets = 0;
                for (size_t j = 0; j < 27; ++j) meets += i != j && l.meets(L.lines[j]);
                CHECK(meets == 10);
                CHECK(L.degrees[i] == l.degree());
                CHECK(L.frobenius_permutation()[i] == L.index_of(l.frobenius()));
                // The degree is the orbit length under Frobenius.
                int len = 1;
                for (ProjLine m = l.frobenius(); !(m == l); m = m.frobenius()) ++len;
                CHECK(len == l.degree());
            }
            CHECK(L.attempts.back().outcome == "ok");
            CHECK(L.attempts.size() <= 8);
        }
    }
}

TEST_CASE("line charts reproduce the lines") {
    std::mt19937_64 rng(3);
    auto X = random_smooth(5, rng);
    LineSet L = find_lines(X);
    for (const auto& l : L.lines) {
        LineChart c = chart_of(l);
        const Field& F = *L.field;
        Vec a(4, F.zero()), b(4, F.zero());
        a[c.i] = b[c.j] = F.one();
        int k = 0;
        for (Vec* row : {&a, &b})
            for (int col = 0; col < 4; ++col)
                if (col != c.i && col != c.j) (*row)[col] = c.coords[k++];
        CHECK(ProjLine(a, b) == l);
        CHECK(c.i < c.j);
    }
}

TEST_CASE("line degrees agree with a census of lines through point pairs") {
    std::vector<int64_t> fermat(20, 0);
    fermat[0] = fermat[10] = fermat[16] = fermat[19] = 1;
    std::vector<CubicSurface> surfaces{CubicSurface::from_ints(2, fermat)};
    std::mt19937_64 rng(8);
    for (int i = 0; i < 3; ++i) surfaces.push_back(random_smooth(2, rng));
    for (const auto& X : surfaces) {
        LineSet L = find_lines(X);
        for (int k = 1; k <= 4; ++k) {
            size_t expected = 0;
            for (int d : L.degrees) expected += k % d == 0;
            CHECK(lines_over(X, k) == expected);
        }
    }
    auto Y = random_smooth(3, rng);
    LineSet L = find_lines(Y);
    for (int k = 1; k <= 2; ++k) {
        size_t expected = 0;
        for (int d : L.degrees) expected += k % d == 0;
        CHECK(lines_over(Y, k) == expected);
    }
}

TEST_CASE("classification is consistent with counts and cycle types") {
    std::mt19937_64 rng(77);
    const auto& table = weyl::WeylTable::get(6);
    for (uint64_t q : {2, 3, 4, 5, 7, 11}) {
        for (int trial = 0; trial < 3; ++trial) {
            auto X = random_smooth(q, rng);
            Classification c = classify(X);
            REQUIRE(c.cls != nullptr);
            CHECK(&table.class_of(c.frobenius) == c.cls);
            CHECK(c.cycle_type == c.cls->cycle_type);
            CHECK(static_cast<int>(c.counts.size()) == trace_check_range(q, ClassifyOptions{}.count_budget));
            CHECK(c.counts.size() >= 2);
            CHECK(c.counts[0] >= 1);  // Chevalley-Warning
            auto t = trace_vector(X, static_cast<int>(c.counts.size()));
            for (size_t n = 0; n < t.size(); ++n) CHECK(t[n] == c.cls->trace(static_cast<int>(n) + 1));
            std::multiset<int> from_lines(c.lines.degrees.begin(), c.lines.degrees.end());
            std::multiset<int> from_cycles;
            for (int len : c.cycle_type)
                for (int i = 0; i < len; ++i) from_cycles.insert(len);
            CHECK(from_lines == from_cycles);
        }
    }
}

TEST_CASE("classification is invariant under coordinate changes") {
    std::mt19937_64 rng(90);
    for (uint64_t q : {2, 3, 5, 8}) {
        auto X = random_smooth(q, rng);
        const auto* cls = classify(X).cls;
        for (int i = 0; i < 2; ++i) {
            auto Y = X.transform(random_invertible(X.tower().base(), rng));
            CHECK(classify(Y, {static_cast<uint64_t>(i) + 5}).cls == cls);
        }
    }
}

TEST_CASE("general position checks") {
    auto tw = ff::shared_tower(7, {1});
    const Field& F = tw->base();
    auto P = [&](int a, int b, int c) { return ProjPoint(Vec{F.from_int(a), F.from_int(b), F.from_int(c)}); };
    std::vector<ProjPoint> collinear{P(1, 0, 0), P(0, 1, 0), P(1, 1, 0), P(0, 0, 1), P(1, 2, 3), P(2, 5, 1)};
    CHECK(general_position_violation(collinear).find("collinear") != std::string::npos);
    // Six points on the conic xz = y^2.
    std::vector<ProjPoint> conic;
    for (int t = 0; t < 6; ++t) conic.push_back(P(1, t, t * t));
    CHECK(general_position_violation(conic) == "the six points lie on a conic");
    std::vector<ProjPoint> repeated{P(1, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1), P(1, 1, 1), P(1, 2, 3)};
    CHECK(general_position_violation(repeated) == "repeated point");
    CHECK_THROWS_AS(split_cubic_from_points(conic), InvalidArgument);
}

TEST_CASE("split surfaces from six points have the identity class") {
    std::mt19937_64 rng(12);
    for (uint64_t q : {4, 7, 8, 9}) {
        auto tw = ff::shared_tower(q, {1});
        auto pts = six_general_points(tw->base(), rng);
        auto X = split_cubic_from_points(pts);
        CHECK(is_smooth(X).smooth);
        Classification c = classify(X);
        CHECK(c.cls->alias == "C1");
        for (int d : c.lines.degrees) CHECK(d == 1);
        // The cubic relation vanishes at the image of every point of P^2.
        CHECK(c.counts[0] == q * q + 7 * q + 1);
    }
}

TEST_CASE("points off the lines") {
    std::mt19937_64 rng(19);
    for (uint64_t q : {3, 4, 5, 7}) {
        for (int trial = 0; trial < 3; ++trial) {
            auto X = random_smooth(q, rng);
            LineSet L = find_lines(X);
            const Field& F = X.tower().base();
            const Field& C = *L.field;
            CubicForm f = X.form();
            size_t on_surface = 0, on_lines = 0;
            geom::for_each_proj_point(3, F, [&](const Vec& p) {
                if (!f.eval(p).is_zero()) return;
                ++on_surface;
                Vec pc;
                for (const auto& x : p) pc.push_back(C.from_base(x.coeff(0)));
                for (size_t i = 0; i < L.lines.size(); ++i)
                    if (L.lines[i].contains(pc)) {
                        ++on_lines;
                        break;
                    }
            });
            // A rational point can also be the meeting point of two conjugate lines.
            bool exists = on_surface > on_lines;
            if (exists) {
                ProjPoint p = point_off_lines(X, L);
                CHECK(f.eval(p.coords()).is_zero());
            } else {
                CHECK_THROWS_AS(point_off_lines(X, L), LookupError);
            }
        }
    }
}

TEST_CASE("surface through every point of P^3(GF(2))") {
    // Every rational frame point lies on the surface, so the solver must leave GF(2).
    std::vector<int64_t> c{0, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0};
    auto X = CubicSurface::from_ints(2, c);
    REQUIRE(is_smooth(X).smooth);
    CHECK(count_points(X, 1) == 15);
    LineSet L = find_lines(X);
    CHECK(L.lines.size() == 27);
    CHECK(L.attempts.front().outcome == "no point off the surface for the section");
    CHECK(L.attempts.back().outcome == "ok");
}
