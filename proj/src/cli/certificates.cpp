#include "dpfq/cli/certificates.hpp"

#include <algorithm>

#include "dpfq/error.hpp"
#include "dpfq/weyl/classes.hpp"

namespace dpfq::cli {

using nlohmann::json;

namespace {

std::string monomial_name(const std::array<int, 4>& e) {
    std::string s;
    for (int v = 0; v < 4; ++v) {
        if (e[v] == 0) continue;
        s += "x" + std::to_string(v);
        if (e[v] > 1) s += "^" + std::to_string(e[v]);
    }
    return s;
}

json class_json(const weyl::ClassRecord& c) {
    return {{"id", c.id}, {"name", c.name}, {"alias", c.alias}, {"order", c.order}, {"cycle_type", c.cycle_type}};
}

int64_t power(uint64_t q, int n) {
    int64_t r = 1;
    for (int i = 0; i < n; ++i) r *= static_cast<int64_t>(q);
    return r;
}

}  // namespace

json element_json(const ff::Elem& x) { return x.index(); }

json cubic_certificate(const cubic::CubicSurface& X, const cubic::SmoothnessEvidence& smooth,
                       const cubic::Classification& cls) {
    json monos = json::array();
    for (const auto& e : cubic::cubic_exponents()) monos.push_back(monomial_name(e));

    json counts = json::array();
    for (size_t i = 0; i < cls.counts.size(); ++i)
        counts.push_back({{"n", i + 1}, {"count", cls.counts[i]}, {"trace", cls.traces[i]}});

    const auto& L = cls.lines;
    json lines = json::array();
    for (size_t i = 0; i < L.lines.size(); ++i) {
        auto chart = cubic::chart_of(L.lines[i]);
        json coords = json::array();
        for (const auto& x : chart.coords) coords.push_back(element_json(x));
        lines.push_back({{"chart", {chart.i, chart.j}}, {"coords", coords}, {"degree", L.degrees[i]}, {"label", cls.labels[i]}});
    }
    json attempts = json::array();
    for (const auto& a : L.attempts)
        attempts.push_back({{"extension", a.extension}, {"seed", a.seed}, {"outcome", a.outcome}});

    return {{"schema", kCubicSchema},
            {"q", X.q()},
            {"field", X.tower().descriptor()},
            {"monomials", monos},
            {"coefficients", X.coeffs()},
            {"smoothness", {{"smooth", smooth.smooth}, {"strategy", smooth.strategy}, {"rank", smooth.rank}, {"columns", smooth.columns}}},
            {"counts", counts},
            {"lines",
             {{"common_degree", L.common_degree},
              {"field", {{"q", X.q()}, {"base_modulus", L.field->base().modulus()}, {"degree", L.field->degree()}, {"modulus", L.field->modulus()}}},
              {"chart_convention", "rows of the reduced echelon basis: identity in columns (i, j), coords the remaining entries row by row"},
              {"records", lines},
              {"attempts", attempts}}},
            {"cycle_type", cls.cycle_type},
            {"cycle_type_unique", cls.cycle_type_unique},
            {"class", class_json(*cls.cls)},
            {"seeds", {{"tower", X.seed()}}}};
}

json c14_certificate(const construct::C14Construction& c) {
    json cert = cubic_certificate(c.surface, c.smoothness, c.classification);
    cert["schema"] = kC14Schema;

    auto vec = [](const auto& v) {
        json a = json::array();
        for (const auto& x : v) a.push_back(element_json(x));
        return a;
    };
    const auto& cfg = c.config;
    json pts = json::array(), lines = json::array();
    for (const auto& p : cfg.points) pts.push_back(vec(p.coords()));
    for (const auto& E : cfg.lines) lines.push_back({vec(E.a()), vec(E.b())});
    json planes = json::array();
    for (const auto& h : cfg.planes) planes.push_back(vec(h));
    json basis = json::array();
    for (const auto& f : c.pencil.basis) basis.push_back(vec(f.coeffs()));

    const auto& e7 = weyl::blowup_embed(*c.classification.cls);
    const auto& twist = weyl::geiser_twist(e7);
    cert["construction"] = {
        {"field", cfg.tower->descriptor()},
        {"config_attempts", cfg.attempts},
        {"center", vec(cfg.center)},
        {"directions", {vec(cfg.directions[0]), vec(cfg.directions[1]), vec(cfg.directions[2])}},
        {"points", pts},
        {"lines", lines},
        {"planes", planes},
        {"pencil", {{"basis", basis}, {"plane_union", vec(c.pencil.plane_union.coeffs())}, {"chosen", vec(c.pencil.chosen.coeffs())}}},
    };
    cert["blowup"] = {{"point", vec(c.point_off_lines.coords())}, {"class", class_json(e7)}, {"geiser_twist", class_json(twist)}};
    cert["seeds"]["construction"] = cfg.seed;
    return cert;
}

json dp2_certificate(const dp2::ConicBundleSurface& X, int max_n, uint64_t exhaustive_limit) {
    json coeffs = json::array();
    for (const auto& Q : X.forms())
        for (auto c : Q) coeffs.push_back(c);

    auto sm = dp2::dp2_smooth(X);
    json cert = {{"schema", kDp2Schema},
                 {"q", X.q()},
                 {"field", X.tower().descriptor()},
                 {"model", "s^2 Q0 + st Q1 + t^2 Q2, each Q in x^2, xy, xz, y^2, yz, z^2"},
                 {"coefficients", coeffs},
                 {"smoothness", {{"smooth", sm.smooth}, {"strategy", sm.strategy}, {"reason", sm.reason}}}};
    if (sm.witness) {
        json w = json::array();
        for (const auto& x : *sm.witness) w.push_back(x.to_string());
        cert["smoothness"]["witness"] = w;
    }
    auto disc = dp2::discriminant(X);
    json dc = json::array();
    for (const auto& c : disc.coeffs) dc.push_back(element_json(c));
    cert["discriminant"] = {{"coefficients_s0_to_s6", dc}, {"text", disc.to_string()}};
    if (!sm.smooth) return cert;

    json fibers = json::array();
    for (const auto& f : dp2::singular_fibers(X))
        fibers.push_back({{"form", f.point.form.to_string()}, {"degree", f.point.degree}, {"rank", f.rank}, {"split", f.split}});
    cert["fibers"] = fibers;

    auto ev = dp2::frobenius_eigenvalues(X);
    json all = json::array(), perp = json::array();
    for (const auto& z : ev) all.push_back(z.to_string());
    // Drop one eigenvalue 1 (the canonical class) for the action on its orthogonal complement.
    auto rest = ev;
    rest.erase(std::find(rest.begin(), rest.end(), weyl::RootOfUnity{0, 1}));
    for (const auto& z : rest) perp.push_back(z.to_string());
    cert["eigenvalues"] = {{"picard", all}, {"orthogonal_to_canonical", perp}, {"charpoly", weyl::charpoly_from_roots(ev)}};

    try {
        const auto& cls = dp2::classify_dp2(X);
        cert["class"] = class_json(cls);
        cert["geiser_twist"] = class_json(weyl::geiser_twist(cls));
    } catch (const LookupError& e) {
        cert["class"] = {{"error", e.what()}, {"ambiguous", e.ambiguous()}};
    }

    json counts = json::array();
    for (int n = 1; n <= max_n; ++n) {
        int64_t qn = power(X.q(), n);
        json row = {{"n", n}, {"count", dp2::count_points_dp2(X, n)}, {"formula", qn * qn + qn * weyl::root_power_sum(ev, n) + 1}};
        if (static_cast<uint64_t>(qn) <= exhaustive_limit) row["exhaustive"] = dp2::count_points_dp2_exhaustive(X, n);
        counts.push_back(row);
    }
    cert["counts"] = counts;
    return cert;
}

}  // namespace dpfq::cli
