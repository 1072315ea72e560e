#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpfq/geom/proj.hpp"

namespace dpfq::cli {

inline constexpr const char* kArcSchema = "dpfq.arc-search/1";

struct ArcSearchResult {
    uint64_t q = 0;
    uint64_t seed = 0;
    bool found = false;
    /// Six points of P^2(GF(q)) in general position, when found.
    std::vector<geom::ProjPoint> witness;
    /// Pairs of further points examined after fixing the frame.
    uint64_t pairs_examined = 0;

    nlohmann::json to_json() const;
};

/// Six points of P^2(GF(q)) with no three collinear and not all on a conic, or proof that none
/// exist. Any such six contain four points in general position, and PGL_3 moves those to
/// (1:0:0), (0:1:0), (0:0:1), (1:1:1); so the search fixes this frame and runs over all pairs of
/// remaining points, which is exhaustive.
ArcSearchResult arc_search(uint64_t q, uint64_t seed = 0);

}  // namespace dpfq::cli
