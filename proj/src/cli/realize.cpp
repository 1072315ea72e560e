#include "dpfq/cli/realize.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dpfq/cli/certificates.hpp"
#include "dpfq/construct/nine_lines.hpp"
#include "dpfq/weyl/classes.hpp"

namespace dpfq::cli {

namespace fs = std::filesystem;

std::filesystem::path work_directory() {
    const char* env = std::getenv("DPFQ_WORKDIR");
    return env && *env ? fs::path(env) : fs::path("dpfq-work");
}

namespace {

void write_json(const fs::path& path, const nlohmann::json& j) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

RealizationRow row(uint64_t q, const weyl::ClassRecord& c, const std::string& cert, bool ok, std::string note = {}) {
    return {q, c.alias, c.name, c.order, cert, ok, std::move(note)};
}

}  // namespace

std::vector<RealizationRow> realize_all(const std::vector<uint64_t>& qs, const fs::path& dir, uint64_t seed) {
    std::vector<RealizationRow> rows;
    for (uint64_t q : qs) {
        auto c = construct::make_c14_surface(q, seed);
        auto path = dir / ("c14_q" + std::to_string(q) + ".json");
        write_json(path, c14_certificate(c));

        const auto& c14 = *c.classification.cls;
        const auto& e47 = weyl::blowup_embed(c14);
        const auto& e56 = weyl::geiser_twist(e47);
        rows.push_back(row(q, c14, path.string(), c14.alias == "C14" && c14.order == 9));
        rows.push_back(row(q, e47, path.string(), e47.alias == "47" && e47.order == 9 && &weyl::geiser_twist(e56) == &e47,
                           "blow-up at a rational point off the 27 lines"));
        rows.push_back(row(q, e56, path.string(), e56.alias == "56" && e56.order == 18, "Geiser twist of 47"));

        if (q == 3) {
            auto X = construct::dp2_class35_surface();
            auto dpath = dir / "dp2_class35_q3.json";
            write_json(dpath, dp2_certificate(X));
            const auto& e35 = dp2::classify_dp2(X);
            const auto& e28 = weyl::geiser_twist(e35);
            rows.push_back(row(q, e35, dpath.string(), e35.alias == "35", "fixed conic bundle"));
            rows.push_back(row(q, e28, dpath.string(), e28.alias == "28" && &weyl::geiser_twist(e28) == &e35, "Geiser twist of 35"));
        }
    }
    return rows;
}

std::string rows_csv(const std::vector<RealizationRow>& rows) {
    std::ostringstream out;
    out << "q,alias,class,order,ok,certificate,note\n";
    for (const auto& r : rows)
        out << r.q << ',' << r.alias << ',' << r.class_name << ',' << r.order << ',' << (r.ok ? "yes" : "no") << ','
            << r.certificate << ',' << r.note << '\n';
    return out.str();
}

}  // namespace dpfq::cli
