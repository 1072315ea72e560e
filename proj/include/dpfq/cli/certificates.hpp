#pragma once

#include <json.hpp>

#include "dpfq/construct/nine_lines.hpp"
#include "dpfq/cubic/classify.hpp"
#include "dpfq/dp2/conic_bundle.hpp"

namespace dpfq::cli {

inline constexpr const char* kCubicSchema = "dpfq.cubic-certificate/1";
inline constexpr const char* kC14Schema = "dpfq.c14-construction/1";
inline constexpr const char* kDp2Schema = "dpfq.dp2-certificate/1";

/// Field elements are written as integers: sum c_i q^i over the power basis of their level,
/// c_i the index of a base-field element. The field descriptor pins the moduli.
nlohmann::json element_json(const ff::Elem& x);

/// Coefficients, smoothness evidence, point counts, the 27 lines (chart, coordinates, degree),
/// solver attempts, cycle type, class and seeds.
nlohmann::json cubic_certificate(const cubic::CubicSurface& X, const cubic::SmoothnessEvidence& smooth,
                                 const cubic::Classification& cls);

/// The cubic certificate plus the configuration, the pencil and the blow-up point with the
/// resulting degree-2 classes.
nlohmann::json c14_certificate(const construct::C14Construction& c);

/// Coefficients, smoothness, discriminant factors, fibers, eigenvalues, class and twist, and
/// point counts for n = 1..max_n (with exhaustive counts where q^n <= exhaustive_limit).
nlohmann::json dp2_certificate(const dp2::ConicBundleSurface& X, int max_n = 3, uint64_t exhaustive_limit = 9);

}  // namespace dpfq::cli
