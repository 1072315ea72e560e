#pragma once

#include <cstdint>
#include <vector>

#include "dpfq/cubic/lines.hpp"
#include "dpfq/weyl/classes.hpp"

namespace dpfq::cubic {

struct ClassifyOptions {
    uint64_t seed = 0;
    /// Point counts over GF(q^n) are used for n = 1, 2 and every further n with q^(2n) <= budget.
    uint64_t count_budget = uint64_t{1} << 20;
};

struct Classification {
    const weyl::ClassRecord* cls = nullptr;
    LineSet lines;
    /// Exceptional class (index into the E6 lattice curves) assigned to each line.
    std::vector<int> labels;
    weyl::WeylElement frobenius;
    std::vector<int> cycle_type;
    /// Whether the cycle type alone determines the class.
    bool cycle_type_unique = false;
    /// #X(GF(q^n)) and t_n for n = 1..counts.size(), all checked against the class record.
    std::vector<uint64_t> counts;
    std::vector<int64_t> traces;
};

/// Number of n >= 1 checked by classify: all n <= 12 with q^(2n) within the budget, at least 2.
int trace_check_range(uint64_t q, uint64_t budget);

/// Frobenius class of a smooth cubic surface. The lines are labelled by exceptional classes
/// through a set of six pairwise skew lines, which turns the Frobenius permutation of the lines
/// into an element of W(E6). The cycle type must agree with the line degrees and every
/// counted trace with the class record; a disagreement throws InternalError.
Classification classify(const CubicSurface& X, const ClassifyOptions& opt = {});

/// A GF(q)-point of X on none of the lines; throws LookupError if every rational point lies on a line.
geom::ProjPoint point_off_lines(const CubicSurface& X, const LineSet& lines);

}  // namespace dpfq::cubic
