#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "dpfq/cli/arcs.hpp"
#include "dpfq/cli/census.hpp"
#include "dpfq/cli/certificates.hpp"
#include "dpfq/cli/realize.hpp"
#include "dpfq/construct/nine_lines.hpp"
#include "dpfq/cubic/split.hpp"
#include "dpfq/error.hpp"
#include "dpfq/weyl/classes.hpp"

using namespace dpfq;
using nlohmann::json;

namespace {

// Writes to `path`, or stdout when empty.
void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

void emit(const json& j, const std::string& path) { emit(j.dump(2) + "\n", path); }

int check(bool ok, const std::string& what) {
    if (!ok) std::cerr << "check failed: " << what << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius classes of cubic and degree-2 del Pezzo surfaces over finite fields"};
    app.require_subcommand(1);
    std::string out;
    app.add_option("-o,--out", out, "Write the report to this file instead of stdout");
    int status = 0;

    auto* weyl_cmd = app.add_subcommand("weyl-table", "Conjugacy classes of W(E6) or W(E7) as CSV");
    std::string which = "e6";
    weyl_cmd->add_option("group", which, "e6 or e7")->check(CLI::IsMember({"e6", "e7"}));
    weyl_cmd->callback([&] {
        const auto& t = weyl::WeylTable::get(which == "e6" ? 6 : 7);
        emit(weyl::weyl_table_csv(t), out);
        status = check(t.classes().size() == (which == "e6" ? 25u : 60u), "class count");
    });

    auto* census_cmd = app.add_subcommand("census", "Classify every smooth cubic form over GF(2)");
    uint64_t census_q = 2;
    cli::CensusOptions copt;
    bool csv = false;
    census_cmd->add_option("--q", census_q, "Field size (only 2)")->required();
    census_cmd->add_option("--jobs", copt.jobs, "Worker threads")->check(CLI::PositiveNumber);
    census_cmd->add_flag("--csv", csv, "Print the per-class table as CSV instead of JSON");
    census_cmd->callback([&] {
        auto r = cli::census_cubic(census_q, copt);
        if (csv)
            emit(r.to_csv(), out);
        else
            emit(r.to_json(), out);
        bool identity_absent = false;
        for (const auto* c : r.absent) identity_absent |= c->order == 1;
        status = check(r.present.size() == 18 && r.absent.size() == 7 && identity_absent && r.unmatched == 0,
                       "18 classes present, 7 absent, identity absent");
    });

    auto* arc_cmd = app.add_subcommand("arc-search", "Six points in general position in P^2(GF(q))");
    uint64_t arc_q = 0;
    arc_cmd->add_option("--q", arc_q, "Field size")->required();
    arc_cmd->callback([&] {
        auto r = cli::arc_search(arc_q);
        json j = r.to_json();
        bool ok = true;
        if (r.found) {
            auto X = cubic::split_cubic_from_points(r.witness);
            auto cls = cubic::classify(X);
            j["split_surface"] = cli::cubic_certificate(X, cubic::is_smooth(X), cls);
            ok = cls.cls->order == 1;
        }
        emit(j, out);
        if (arc_q == 2 || arc_q == 3 || arc_q == 5) ok = ok && !r.found;
        if (arc_q == 4 || arc_q == 7 || arc_q == 8 || arc_q == 9) ok = ok && r.found;
        status = check(ok, "arc existence and split class");
    });

    auto* c14_cmd = app.add_subcommand("construct-c14", "Cubic surface with nine conjugate lines");
    uint64_t c14_q = 0, c14_seed = 0;
    c14_cmd->add_option("--q", c14_q, "Field size")->required();
    c14_cmd->add_option("--seed", c14_seed, "Seed for the configuration and the solvers");
    c14_cmd->callback([&] {
        auto c = construct::make_c14_surface(c14_q, c14_seed);
        emit(cli::c14_certificate(c), out);
    });

    auto* dp35_cmd = app.add_subcommand("construct-dp2-35", "The fixed conic bundle over GF(3)");
    dp35_cmd->callback([&] {
        auto X = construct::dp2_class35_surface();
        emit(cli::dp2_certificate(X), out);
        status = check(dp2::classify_dp2(X).alias == "35", "class 35");
    });

    auto* classify_cmd = app.add_subcommand("classify", "Classify a cubic surface given by 20 coefficients");
    uint64_t cl_q = 0, cl_seed = 0;
    std::vector<int64_t> cl_coeffs;
    classify_cmd->add_option("--q", cl_q, "Field size")->required();
    classify_cmd->add_option("--coeffs", cl_coeffs, "Coefficients of x0^3, x0^2x1, ..., x3^3")->required()->expected(20);
    classify_cmd->add_option("--seed", cl_seed, "Tower and solver seed");
    classify_cmd->callback([&] {
        auto X = cubic::CubicSurface::from_ints(cl_q, cl_coeffs, cl_seed);
        auto sm = cubic::is_smooth(X);
        if (!sm.smooth) {
            emit(json{{"schema", cli::kCubicSchema}, {"q", cl_q}, {"coefficients", X.coeffs()},
                      {"smoothness", {{"smooth", false}, {"strategy", sm.strategy}, {"rank", sm.rank}, {"columns", sm.columns}}}},
                 out);
            status = 1;
            return;
        }
        emit(cli::cubic_certificate(X, sm, cubic::classify(X, {cl_seed})), out);
    });

    auto* vdp2_cmd = app.add_subcommand("verify-dp2", "Check a conic bundle s^2 Q0 + st Q1 + t^2 Q2 (default: the fixed surface)");
    uint64_t vq = 3;
    std::vector<int64_t> vcoeffs;
    vdp2_cmd->add_option("--q", vq, "Field size (odd)");
    vdp2_cmd->add_option("--coeffs", vcoeffs, "Q0, Q1, Q2 in x^2, xy, xz, y^2, yz, z^2")->expected(18);
    vdp2_cmd->callback([&] {
        bool fixed = vcoeffs.empty();
        auto X = fixed ? construct::dp2_class35_surface() : dp2::ConicBundleSurface::from_ints(vq, vcoeffs);
        json j = cli::dp2_certificate(X);
        emit(j, out);
        bool ok = j["smoothness"]["smooth"].get<bool>();
        if (ok)
            for (const auto& row : j["counts"]) {
                ok = ok && row["count"] == row["formula"];
                if (row.contains("exhaustive")) ok = ok && row["count"] == row["exhaustive"];
            }
        if (fixed && ok) {
            std::vector<std::string> forms;
            for (const auto& f : j["fibers"]) {
                forms.push_back(f["form"]);
                ok = ok && f["rank"] == 2 && !f["split"].get<bool>();
            }
            ok = ok && forms == std::vector<std::string>{"s", "t", "s^2 + t^2", "s^2 + s*t + [2]*t^2"} &&
                 j["class"]["alias"] == "35" && j["geiser_twist"]["alias"] == "28";
        }
        status = check(ok, "degree-2 surface checks");
    });

    auto* realize_cmd = app.add_subcommand("realize-all", "C14, 47 and 56 for each q; 35 and 28 over GF(3)");
    std::vector<uint64_t> qs;
    uint64_t rseed = 0;
    realize_cmd->add_option("--q-list", qs, "Field sizes")->required()->delimiter(',');
    realize_cmd->add_option("--seed", rseed, "Construction seed");
    realize_cmd->callback([&] {
        auto dir = cli::work_directory();
        auto rows = cli::realize_all(qs, dir, rseed);
        emit(cli::rows_csv(rows), out);
        bool ok = true;
        for (const auto& r : rows) ok = ok && r.ok;
        status = check(ok, "realization rows");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return status;
}
