#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dpfq/cubic/classify.hpp"
#include "dpfq/cubic/form.hpp"
#include "dpfq/cubic/surface.hpp"
#include "dpfq/dp2/conic_bundle.hpp"
#include "dpfq/ff/tower.hpp"
#include "dpfq/geom/proj.hpp"

namespace dpfq::construct {

using cubic::CubicForm;
using ff::Elem;
using ff::Field;
using geom::Vec;

/// Nine conjugate lines built from three conjugate lines through a rational point.
///
/// tower has levels GF(q), GF(q^3), GF(q^9). The line through the center and directions[i]
/// is spokes[i]; points[k] lies on spokes[k % 3], and lines[k] joins points[k] and
/// points[k+1] (indices mod 9). Frobenius maps spokes[i], points[k], lines[k] and planes[i] to
/// the next one. planes[i] is the plane through the two spokes other than spokes[i], and holds
/// lines[i+1], lines[i+4], lines[i+7].
struct NineLineConfig {
    std::shared_ptr<const ff::FieldTower> tower;
    uint64_t seed = 0;
    Vec center;                            // over GF(q)
    std::array<Vec, 3> directions;         // over GF(q^3)
    std::vector<geom::ProjLine> spokes;    // over GF(q^3)
    std::vector<geom::ProjPoint> points;   // over GF(q^9)
    std::vector<geom::ProjLine> lines;     // over GF(q^9)
    std::array<std::array<Elem, 4>, 3> planes;  // linear forms over GF(q^3)
    int attempts = 0;

    uint64_t q() const { return tower->q(); }
};

/// Random configuration from `seed`; redraws until every invariant holds.
NineLineConfig build_config(uint64_t q, uint64_t seed = 0);
/// First violated invariant of the configuration, or an empty string.
std::string config_violation(const NineLineConfig& c);

/// The GF(q)-space of cubic forms vanishing on the nine lines.
struct CubicPencil {
    std::shared_ptr<const ff::FieldTower> tower;
    /// Echelon basis over GF(q).
    std::vector<CubicForm> basis;
    /// Product of the three plane forms (a rational norm form), scaled so its first nonzero
    /// coefficient is 1.
    CubicForm plane_union;
    /// The member used for the surface: the lexicographically smallest normalized basis
    /// vector not proportional to plane_union.
    CubicForm chosen;

    int dimension() const { return static_cast<int>(basis.size()); }
    /// All q+1 members up to scalars: plane_union and chosen + c * plane_union.
    std::vector<CubicForm> members() const;
};

/// Imposes vanishing of the four coefficients of the cubic restricted to each line,
/// split into GF(q)-coordinates. Throws InvalidArgument if the space has dimension < 2.
CubicPencil cubics_through(const NineLineConfig& c);

/// Glues three plane cubics into one quaternary cubic. P[i] must not involve x_{i+1} and
/// must have x0^3 coefficient 1; P[i] and P[j] must agree on the line x_{i+1} = x_{j+1} = 0.
/// The result restricts to P[i] on x_{i+1} = 0.
CubicForm combine_cubics(const std::array<CubicForm, 3>& P);

/// The explicit family over GF(q^3): coordinates in which the three planes are x1, x2, x3 = 0,
/// each plane cubic the product of its three lines, glued by combine_cubics and mapped back.
/// Returns {glued form, plane union} in the original coordinates over GF(q^3).
std::array<CubicForm, 2> glued_pencil(const NineLineConfig& c);

/// True if f (over any level of the tower) lies in the span of the pencil.
bool in_pencil(const CubicPencil& pencil, const CubicForm& f);

struct C14Construction {
    NineLineConfig config;
    CubicPencil pencil;
    cubic::CubicSurface surface;
    cubic::SmoothnessEvidence smoothness;
    cubic::Classification classification;
    /// A rational point on none of the 27 lines (where the surface is blown up).
    geom::ProjPoint point_off_lines;
};

/// A smooth cubic surface over GF(q) containing nine conjugate lines, classified.
/// Throws InternalError if the chosen member is singular or the class is not the order-9 class.
C14Construction make_c14_surface(uint64_t q, uint64_t seed = 0);

/// (x^2 + xz - z^2) s^2 + (x^2 + y^2) st + (x^2 - xy - y^2 + xz - z^2) t^2 over GF(3).
dp2::ConicBundleSurface dp2_class35_surface();

}  // namespace dpfq::construct
