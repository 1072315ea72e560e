#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dpfq/cubic/surface.hpp"
#include "dpfq/geom/proj.hpp"

namespace dpfq::cubic {

/// A line as the row space of a 2x4 matrix in reduced echelon form: identity in the
/// chart columns (i, j), the other four entries free (row-major over the remaining columns).
struct LineChart {
    int i = 0, j = 1;
    std::array<Elem, 4> coords;
};

LineChart chart_of(const geom::ProjLine& line);

/// One solver attempt: the base extension degree used and the seed of its coordinate change.
struct LineAttempt {
    int extension = 1;
    uint64_t seed = 0;
    std::string outcome;
};

/// The 27 lines of a smooth cubic surface, all expressed over GF(q^M) where M is the
/// least common multiple of their degrees of definition.
struct LineSet {
    const Field* field = nullptr;
    int common_degree = 1;
    std::vector<geom::ProjLine> lines;
    std::vector<int> degrees;
    std::vector<LineAttempt> attempts;

    /// Index of the q-power Frobenius image of each line.
    std::vector<int> frobenius_permutation() const;
    int index_of(const geom::ProjLine& l) const;
};

/// Finds the lines by cutting with a plane and eliminating: the points where lines meet
/// the plane are the zeros on the plane cubic of a resultant that detects whether the
/// tangent cone through a point contains a line. Retries (at most 8) with seeded random
/// coordinate changes, switching to a base extension GF(q^e) when small fields force every
/// plane through a line. Throws InternalError if no attempt yields 27 lines each meeting 10.
LineSet find_lines(const CubicSurface& X, uint64_t seed = 0);

/// The element x of the subfield GF(q^d) of its level GF(q^m), sent into GF(q^M) by the
/// embedding GF(q^d) -> GF(q^M) of the shared towers with `seed`.
Elem to_common_level(const Elem& x, int d, int M, uint64_t seed);
/// GF(q^m) as the top level of shared_tower(q, {1, m}, seed).
const Field& common_level(uint64_t q, int m, uint64_t seed);

}  // namespace dpfq::cubic
