#include "dpfq/cli/arcs.hpp"

#include "dpfq/cubic/split.hpp"
#include "dpfq/error.hpp"
#include "dpfq/ff/tower.hpp"

namespace dpfq::cli {

using geom::ProjPoint;
using geom::Vec;

namespace {

bool collinear(const Vec& a, const Vec& b, const Vec& c) {
    ff::Elem d = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
    return d.is_zero();
}

}  // namespace

ArcSearchResult arc_search(uint64_t q, uint64_t seed) {
    const ff::Field& K = ff::shared_tower(q, {1}, seed)->base();
    if (!K.order_fits() || q > 64) throw InvalidArgument("arc search is exhaustive and limited to q <= 64");
    ArcSearchResult r;
    r.q = q;
    r.seed = seed;

    auto z = K.zero(), o = K.one();
    std::vector<Vec> frame{{o, z, z}, {z, o, z}, {z, z, o}, {o, o, o}};
    // Points off every line through two frame points.
    std::vector<Vec> free;
    for (const auto& p : geom::enumerate_proj(2, K)) {
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4 && ok; ++j) ok = !collinear(frame[i], frame[j], p.coords());
        if (ok) free.push_back(p.coords());
    }
    for (size_t a = 0; a < free.size(); ++a)
        for (size_t b = a + 1; b < free.size(); ++b) {
            ++r.pairs_examined;
            std::vector<ProjPoint> six;
            for (const auto& f : frame) six.emplace_back(f);
            six.emplace_back(free[a]);
            six.emplace_back(free[b]);
            if (cubic::general_position_violation(six).empty()) {
                r.found = true;
                r.witness = std::move(six);
                return r;
            }
        }
    return r;
}

nlohmann::json ArcSearchResult::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : witness) {
        nlohmann::json c = nlohmann::json::array();
        for (const auto& x : p.coords()) c.push_back(x.index());
        pts.push_back(c);
    }
    return {{"schema", kArcSchema},
            {"q", q},
            {"seed", seed},
            {"found", found},
            {"method", "frame (1:0:0), (0:1:0), (0:0:1), (1:1:1) fixed; all pairs of points off the frame lines"},
            {"pairs_examined", pairs_examined},
            {"witness", pts}};
}

}  // namespace dpfq::cli
