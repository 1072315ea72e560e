#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "dpfq/cli/arcs.hpp"
#include "dpfq/cli/census.hpp"
#include "dpfq/cli/certificates.hpp"
#include "dpfq/cli/realize.hpp"
#include "dpfq/cubic/split.hpp"
#include "dpfq/error.hpp"

using namespace dpfq;
using nlohmann::json;

namespace {

cubic::CubicSurface from_mask(uint32_t mask) {
    std::vector<int64_t> c(20);
    for (int m = 0; m < 20; ++m) c[m] = mask >> m & 1;
    return cubic::CubicSurface::from_ints(2, c);
}

ff::Elem det3(const geom::Vec& a, const geom::Vec& b, const geom::Vec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Number of 6-subsets of P^2(GF(q)) with no three collinear and not on a conic, by plain backtracking.
uint64_t count_arcs(uint64_t q) {
    const ff::Field& K = ff::shared_tower(q, {1})->base();
    auto pts = geom::enumerate_proj(2, K);
    uint64_t found = 0;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        if (pick.size() == 6) {
            geom::Matrix C(K, 6, 6);
            for (int r = 0; r < 6; ++r) {
                const auto& x = pts[pick[r]].coords();
                geom::Vec row{x[0] * x[0], x[0] * x[1], x[0] * x[2], x[1] * x[1], x[1] * x[2], x[2] * x[2]};
                for (int k = 0; k < 6; ++k) C.at(r, k) = row[k];
            }
            if (!C.determinant().is_zero()) ++found;
            return;
        }
        for (int i = start; i < static_cast<int>(pts.size()); ++i) {
            bool ok = true;
            for (size_t a = 0; a < pick.size() && ok; ++a)
                for (size_t b = a + 1; b < pick.size() && ok; ++b)
                    ok = !det3(pts[pick[a]].coords(), pts[pick[b]].coords(), pts[i].coords()).is_zero();
            if (!ok) continue;
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return found;
}

}  // namespace

TEST_CASE("bitsliced counts agree with fiber counts") {
    cli::GrayCounter g;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        uint32_t mask = static_cast<uint32_t>(rng() % (1u << 20));
        if (mask == 0) continue;
        g.set(mask);
        auto X = from_mask(mask);
        for (int n = 1; n <= cli::GrayCounter::kLevels; ++n) CHECK(g.count(n) == cubic::count_points(X, n));
        CHECK(g.count(1) == cubic::count_points_exhaustive(X, 1));
        // Flipping a coefficient there and back restores the counts.
        int m = static_cast<int>(rng() % 20);
        uint64_t before = g.count(3);
        g.flip(m);
        CHECK(g.mask() == (mask ^ (1u << m)));
        CHECK(g.count(3) == cubic::count_points(from_mask(mask ^ (1u << m)), 3));
        g.flip(m);
        CHECK(g.count(3) == before);
    }
}

TEST_CASE("partial census") {
    cli::CensusOptions one{1, 1, 6000}, three{3, 1, 6000};
    auto a = cli::census_cubic(2, one);
    auto b = cli::census_cubic(2, three);
    auto ja = a.to_json(), jb = b.to_json();
    for (auto* j : {&ja, &jb}) {
        j->erase("seconds");
        j->erase("jobs");
    }
    CHECK(ja == jb);
    CHECK(a.scanned == 5999);
    CHECK(a.unmatched == 0);

    uint64_t smooth = 0;
    for (uint32_t k = 1; k < 6000; ++k) smooth += cubic::is_smooth_gf2(k ^ (k >> 1));
    CHECK(a.smooth == smooth);
    uint64_t total = 0;
    for (const auto& t : a.present) total += t.count;
    CHECK(total == a.smooth);
    CHECK(a.present.size() + a.absent.size() == 25);

    // Representatives re-classify identically through the line solver.
    for (const auto& t : a.present) {
        auto cls = cubic::classify(from_mask(t.representative));
        CHECK(cls.cls == t.cls);
    }
    CHECK_THROWS_AS(cli::census_cubic(3), InvalidArgument);
}

TEST_CASE("census classes agree with the line solver on random forms") {
    std::mt19937_64 rng(77);
    int checked = 0;
    while (checked < 100) {
        auto k = static_cast<uint32_t>(1 + rng() % ((1u << 20) - 1));
        uint32_t mask = k ^ (k >> 1);
        if (!cubic::is_smooth_gf2(mask)) continue;
        auto r = cli::census_cubic(2, {1, k, k + 1});
        REQUIRE(r.present.size() == 1);
        CHECK(r.present[0].representative == mask);
        // Counting up to GF(2^4) keeps this fast; the class comes from the lines.
        CHECK(cubic::classify(from_mask(mask), {0, 1u << 8}).cls == r.present[0].cls);
        ++checked;
    }
}

TEST_CASE("arc search") {
    for (uint64_t q : {2, 3, 5}) {
        CAPTURE(q);
        CHECK_FALSE(cli::arc_search(q).found);
        CHECK(count_arcs(q) == 0);
    }
    CHECK(count_arcs(4) > 0);
    for (uint64_t q : {4, 7, 8, 9}) {
        CAPTURE(q);
        auto r = cli::arc_search(q);
        REQUIRE(r.found);
        REQUIRE(r.witness.size() == 6);
        CHECK(cubic::general_position_violation(r.witness).empty());
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                for (int c = b + 1; c < 6; ++c)
                    CHECK_FALSE(det3(r.witness[a].coords(), r.witness[b].coords(), r.witness[c].coords()).is_zero());
        auto X = cubic::split_cubic_from_points(r.witness);
        CHECK(cubic::classify(X).cls->order == 1);
    }
}

TEST_CASE("cubic certificates") {
    auto c = construct::make_c14_surface(2, 0);
    json j = cli::c14_certificate(c);
    CHECK(j["schema"] == cli::kC14Schema);
    CHECK(j["class"]["alias"] == "C14");
    CHECK(j["cycle_type"] == std::vector<int>{9, 9, 9});
    CHECK(j["blowup"]["class"]["alias"] == "47");
    CHECK(j["blowup"]["geiser_twist"]["alias"] == "56");
    CHECK(j["lines"]["records"].size() == 27);
    CHECK(j == cli::c14_certificate(construct::make_c14_surface(2, 0)));

    // Each line record rebuilds a line of the surface.
    const auto& X = c.surface;
    const ff::Field& F = *c.classification.lines.field;
    CHECK(j["lines"]["common_degree"] == F.degree());
    auto f = X.form_in(F);
    int total = 0;
    for (const auto& rec : j["lines"]["records"]) {
        int ci = rec["chart"][0], cj = rec["chart"][1];
        std::vector<int> rest;
        for (int k = 0; k < 4; ++k)
            if (k != ci && k != cj) rest.push_back(k);
        geom::Vec r0(4, F.zero()), r1(4, F.zero());
        r0[ci] = F.one();
        r1[cj] = F.one();
        r0[rest[0]] = F.from_index(rec["coords"][0]);
        r0[rest[1]] = F.from_index(rec["coords"][1]);
        r1[rest[0]] = F.from_index(rec["coords"][2]);
        r1[rest[1]] = F.from_index(rec["coords"][3]);
        CHECK(f.contains_line(r0, r1));
        CHECK(c.classification.lines.index_of(geom::ProjLine(r0, r1)) >= 0);
        total += rec["degree"].get<int>();
    }
    CHECK(total == 27 * 9);

    for (const auto& row : j["counts"]) {
        int64_t n = row["n"], qn = int64_t{1} << n;
        CHECK(row["count"].get<int64_t>() == qn * qn + qn * row["trace"].get<int64_t>() + 1);
    }
}

TEST_CASE("degree-2 certificate") {
    json j = cli::dp2_certificate(construct::dp2_class35_surface());
    CHECK(j["schema"] == cli::kDp2Schema);
    CHECK(j["eigenvalues"]["picard"].size() == 8);
    CHECK(j["eigenvalues"]["orthogonal_to_canonical"].size() == 7);
    CHECK(j["fibers"].size() == 4);
    CHECK(j["class"]["alias"] == "35");
    CHECK(j["geiser_twist"]["alias"] == "28");
    for (const auto& row : j["counts"]) {
        CHECK(row["count"] == row["formula"]);
        if (row.contains("exhaustive")) CHECK(row["count"] == row["exhaustive"]);
    }
    CHECK(j["counts"][1].contains("exhaustive"));

    // A singular bundle gets a certificate without fibers.
    std::vector<int64_t> v(18, 0);
    v[0] = 1;
    v[9] = 1;
    v[17] = 1;
    json s = cli::dp2_certificate(dp2::ConicBundleSurface::from_ints(3, v));
    CHECK_FALSE(s["smoothness"]["smooth"].get<bool>());
    CHECK_FALSE(s.contains("fibers"));
}

TEST_CASE("realize_all writes certificates") {
    auto dir = std::filesystem::temp_directory_path() / "dpfq-realize-test";
    std::filesystem::remove_all(dir);
    auto rows = cli::realize_all({2, 3}, dir);
    REQUIRE(rows.size() == 8);
    std::vector<std::string> aliases;
    for (const auto& r : rows) {
        CHECK(r.ok);
        aliases.push_back(r.alias);
        std::ifstream in(r.certificate);
        REQUIRE(in.good());
        json j = json::parse(in);
        CHECK(j["schema"].get<std::string>().rfind("dpfq.", 0) == 0);
    }
    CHECK(aliases == std::vector<std::string>{"C14", "47", "56", "C14", "47", "56", "35", "28"});
    CHECK(cli::rows_csv(rows).rfind("q,alias,class,order,ok,certificate,note\n", 0) == 0);
    std::filesystem::remove_all(dir);
}
