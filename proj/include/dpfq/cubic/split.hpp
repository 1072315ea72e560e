#pragma once

#include <array>
#include <string>
#include <vector>

#include "dpfq/cubic/surface.hpp"
#include "dpfq/geom/proj.hpp"

namespace dpfq::cubic {

/// Empty if the six points of P^2 are in general position (distinct, no three collinear,
/// not all on one conic); otherwise the reason.
std::string general_position_violation(const std::vector<geom::ProjPoint>& pts);

/// The cubic surface obtained by blowing up six rational points of P^2 in general position:
/// the image of P^2 under the plane cubics through the points, whose equation is the unique
/// cubic relation among a basis of those cubics. Throws InvalidArgument on a general
/// position violation.
CubicSurface split_cubic_from_points(const std::vector<geom::ProjPoint>& pts, uint64_t seed = 0);

}  // namespace dpfq::cubic
