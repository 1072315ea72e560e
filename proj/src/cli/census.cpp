#include "dpfq/cli/census.hpp"

#include <bit>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>

#include "dpfq/cubic/form.hpp"
#include "dpfq/cubic/lines.hpp"
#include "dpfq/cubic/surface.hpp"
#include "dpfq/error.hpp"
#include "dpfq/ff/tower.hpp"
#include "dpfq/geom/proj.hpp"

namespace dpfq::cli {

const std::array<GrayCounter::Planes, GrayCounter::kLevels>& GrayCounter::shared_planes() {
    static const std::array<Planes, kLevels> planes = [] {
        std::array<Planes, kLevels> out;
        const auto& ex = cubic::cubic_exponents();
        for (int n = 1; n <= kLevels; ++n) {
            Planes& P = out[n - 1];
            const ff::Field& K = cubic::common_level(2, n, 0);
            std::vector<geom::Vec> pts;
            geom::for_each_proj_point(3, K, [&](const geom::Vec& v) { pts.push_back(v); });
            P.bits = n;
            P.points = pts.size();
            P.words = (pts.size() + 63) / 64;
            P.data.assign(20 * n * P.words, 0);
            for (size_t i = 0; i < pts.size(); ++i)
                for (int m = 0; m < 20; ++m) {
                    ff::Elem v = K.one();
                    for (int k = 0; k < 4; ++k) v *= pts[i][k].pow(ex[m][k]);
                    for (int b = 0; b < n; ++b)
                        if (v.coeff(b)) P.data[(m * n + b) * P.words + i / 64] |= uint64_t{1} << (i % 64);
                }
        }
        return out;
    }();
    return planes;
}

GrayCounter::GrayCounter() {
    const auto& planes = shared_planes();
    for (int n = 0; n < kLevels; ++n) {
        levels_[n].planes = &planes[n];
        levels_[n].acc.assign(planes[n].bits * planes[n].words, 0);
    }
}

void GrayCounter::flip(int m) {
    mask_ ^= uint32_t{1} << m;
    for (Level& L : levels_) {
        const Planes& P = *L.planes;
        const uint64_t* src = &P.data[m * P.bits * P.words];
        for (size_t w = 0; w < L.acc.size(); ++w) L.acc[w] ^= src[w];
    }
}

void GrayCounter::set(uint32_t mask) {
    for (Level& L : levels_) std::fill(L.acc.begin(), L.acc.end(), 0);
    mask_ = 0;
    for (int m = 0; m < 20; ++m)
        if (mask >> m & 1) flip(m);
}

uint64_t GrayCounter::count(int n) const {
    const Level& L = levels_.at(n - 1);
    const Planes& P = *L.planes;
    uint64_t nonzero = 0;
    for (size_t w = 0; w < P.words; ++w) {
        uint64_t any = 0;
        for (int b = 0; b < P.bits; ++b) any |= L.acc[b * P.words + w];
        nonzero += std::popcount(any);
    }
    return P.points - nonzero;
}

namespace {

struct Partial {
    uint64_t scanned = 0, smooth = 0, unmatched = 0;
    std::map<int, ClassTally> tallies;
};

void scan(uint32_t begin, uint32_t end, int prefix, const std::map<std::vector<int64_t>, const weyl::ClassRecord*>& index,
          Partial& out) {
    if (begin >= end) return;
    GrayCounter counter;
    counter.set(begin ^ (begin >> 1));
    std::vector<int64_t> traces(prefix);
    for (uint32_t k = begin; k < end; ++k) {
        if (k != begin) counter.flip(std::countr_zero(k));
        uint32_t mask = counter.mask();
        ++out.scanned;
        if (!cubic::is_smooth_gf2(mask)) continue;
        ++out.smooth;
        bool ok = true;
        for (int n = 1; n <= prefix; ++n) {
            int64_t qn = int64_t{1} << n;
            int64_t rest = static_cast<int64_t>(counter.count(n)) - qn * qn - 1;
            if (rest % qn != 0) ok = false;
            traces[n - 1] = rest / qn;
        }
        auto it = ok ? index.find(traces) : index.end();
        if (it == index.end()) {
            ++out.unmatched;
            continue;
        }
        auto& t = out.tallies[it->second->id];
        if (t.count == 0 || mask < t.representative) t.representative = mask;
        t.cls = it->second;
        ++t.count;
    }
}

}  // namespace

CensusReport census_cubic(uint64_t q, const CensusOptions& opt) {
    if (q != 2) throw InvalidArgument("the census enumerates forms over GF(2) only");
    if (opt.jobs < 1) throw InvalidArgument("jobs must be positive");
    if (opt.begin < 1 || opt.end > (uint32_t{1} << 20) || opt.begin > opt.end) throw InvalidArgument("bad census range");
    auto t0 = std::chrono::steady_clock::now();

    const auto& table = weyl::WeylTable::get(6);
    int prefix = table.separating_trace_prefix();
    if (prefix < 1 || prefix > GrayCounter::kLevels) throw InternalError("no usable separating trace prefix");
    std::map<std::vector<int64_t>, const weyl::ClassRecord*> index;
    for (const auto& c : table.classes()) index[std::vector<int64_t>(c.traces.begin(), c.traces.begin() + prefix)] = &c;

    std::vector<Partial> parts(opt.jobs);
    std::vector<std::thread> threads;
    uint64_t span = opt.end - opt.begin;
    for (int j = 0; j < opt.jobs; ++j) {
        auto b = static_cast<uint32_t>(opt.begin + span * j / opt.jobs);
        auto e = static_cast<uint32_t>(opt.begin + span * (j + 1) / opt.jobs);
        threads.emplace_back(scan, b, e, prefix, std::cref(index), std::ref(parts[j]));
    }
    for (auto& t : threads) t.join();

    CensusReport r;
    r.q = q;
    r.prefix_length = prefix;
    r.jobs = opt.jobs;
    std::map<int, ClassTally> merged;
    for (const auto& p : parts) {
        r.scanned += p.scanned;
        r.smooth += p.smooth;
        r.unmatched += p.unmatched;
        for (const auto& [id, t] : p.tallies) {
            auto& m = merged[id];
            if (m.count == 0 || t.representative < m.representative) m.representative = t.representative;
            m.cls = t.cls;
            m.count += t.count;
        }
    }
    for (const auto& c : table.classes()) {
        auto it = merged.find(c.id);
        if (it == merged.end())
            r.absent.push_back(&c);
        else
            r.present.push_back(it->second);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

nlohmann::json CensusReport::to_json() const {
    nlohmann::json present_rows = nlohmann::json::array(), absent_rows = nlohmann::json::array();
    for (const auto& t : present)
        present_rows.push_back({{"id", t.cls->id}, {"name", t.cls->name}, {"alias", t.cls->alias}, {"order", t.cls->order},
                                {"count", t.count}, {"representative_mask", t.representative}});
    for (const auto* c : absent) absent_rows.push_back({{"id", c->id}, {"name", c->name}, {"alias", c->alias}, {"order", c->order}});
    return {{"schema", kCensusSchema},
            {"q", q},
            {"scanned", scanned},
            {"smooth", smooth},
            {"unmatched", unmatched},
            {"strategy", {{"smoothness", "macaulay-degree-6 over GF(2), bit packed"},
                          {"classification", "trace prefix"},
                          {"prefix_length", prefix_length}}},
            {"mask_convention", "bit m is the coefficient of monomial m in the order x0^3, x0^2x1, ..., x3^3"},
            {"jobs", jobs},
            {"seconds", seconds},
            {"present", present_rows},
            {"absent", absent_rows}};
}

std::string CensusReport::to_csv() const {
    std::ostringstream out;
    out << "id,name,alias,order,count,representative_mask\n";
    const auto& table = weyl::WeylTable::get(6);
    for (const auto& c : table.classes()) {
        const ClassTally* t = nullptr;
        for (const auto& p : present)
            if (p.cls == &c) t = &p;
        out << c.id << ',' << c.name << ',' << c.alias << ',' << c.order << ',' << (t ? t->count : 0) << ',';
        if (t) out << t->representative;
        out << '\n';
    }
    return out.str();
}

}  // namespace dpfq::cli
