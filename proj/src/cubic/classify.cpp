#include "dpfq/cubic/classify.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "dpfq/error.hpp"

namespace dpfq::cubic {

int trace_check_range(uint64_t q, uint64_t budget) {
    int n = 2;
    uint64_t q2 = q * q, size = q2 * q2 * q2;
    while (n < 12 && size <= budget) {
        ++n;
        size *= q2;
    }
    return n;
}

namespace {

// Six pairwise skew lines, by backtracking.
std::vector<int> find_sixer(const std::vector<std::vector<bool>>& meets) {
    int n = static_cast<int>(meets.size());
    std::vector<int> chosen;
    std::function<bool(int)> extend = [&](int from) {
        if (chosen.size() == 6) return true;
        for (int i = from; i < n; ++i) {
            bool skew = std::none_of(chosen.begin(), chosen.end(), [&](int c) { return meets[i][c]; });
            if (!skew) continue;
            chosen.push_back(i);
            if (extend(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!extend(0)) throw InternalError("no six pairwise skew lines");
    return chosen;
}

weyl::LatVec sixer_class(const std::vector<int>& met) {
    // A line meeting e_i, e_j of the sixer is h - e_i - e_j; one meeting all but e_i is
    // 2h - sum_{k != i} e_k.
    weyl::LatVec v{};
    if (met.size() == 2) {
        v[0] = 1;
        v[1 + met[0]] = v[1 + met[1]] = -1;
    } else if (met.size() == 5) {
        v[0] = 2;
        for (int k : met) v[1 + k] = -1;
    } else {
        throw InternalError("line meets " + std::to_string(met.size()) + " lines of a sixer");
    }
    return v;
}

}  // namespace

Classification classify(const CubicSurface& X, const ClassifyOptions& opt) {
    const auto& table = weyl::WeylTable::get(6);
    const auto& L = table.lattice();
    Classification out;
    out.lines = find_lines(X, opt.seed);
    const auto& lines = out.lines.lines;
    int n = static_cast<int>(lines.size());

    std::vector<std::vector<bool>> meets(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) meets[i][j] = i != j && lines[i].meets(lines[j]);

    std::vector<int> sixer = find_sixer(meets);
    out.labels.assign(n, -1);
    for (int k = 0; k < 6; ++k) {
        weyl::LatVec e{};
        e[1 + k] = 1;
        out.labels[sixer[k]] = L.index_of(e);
    }
    for (int i = 0; i < n; ++i) {
        if (out.labels[i] >= 0) continue;
        std::vector<int> met;
        for (int k = 0; k < 6; ++k)
            if (meets[i][sixer[k]]) met.push_back(k);
        out.labels[i] = L.index_of(sixer_class(met));
    }
    {
        std::vector<int> sorted = out.labels;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
            if (sorted[i] != i) throw InternalError("line labelling is not a bijection");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && meets[i][j] != (L.dot(L.curve(out.labels[i]), L.curve(out.labels[j])) == 1))
                throw InternalError("line incidences disagree with the labelling");

    std::vector<int> frob = out.lines.frobenius_permutation();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[out.labels[i]] = out.labels[frob[i]];
    out.frobenius = weyl::WeylElement::from_permutation(L, perm);
    out.cls = &table.class_of(out.frobenius);

    out.cycle_type = out.frobenius.cycle_type();
    std::vector<int> degs = out.lines.degrees;
    std::sort(degs.rbegin(), degs.rend());
    std::vector<int> from_degrees;
    for (size_t i = 0; i < degs.size(); i += degs[i]) from_degrees.push_back(degs[i]);
    if (from_degrees != out.cycle_type || out.cycle_type != out.cls->cycle_type)
        throw InternalError("cycle type disagrees with the line degrees");
    try {
        out.cycle_type_unique = &table.lookup_cycle_type(out.cycle_type) == out.cls;
    } catch (const LookupError&) {
        out.cycle_type_unique = false;
    }

    int range = trace_check_range(X.q(), opt.count_budget);
    int64_t qn = 1;
    for (int k = 1; k <= range; ++k) {
        qn *= static_cast<int64_t>(X.q());
        uint64_t count = count_points(X, k);
        int64_t expected = qn * qn + qn * out.cls->trace(k) + 1;
        if (static_cast<int64_t>(count) != expected)
            throw InternalError("point count over GF(q^" + std::to_string(k) + ") disagrees with class " +
                                out.cls->name);
        out.counts.push_back(count);
        out.traces.push_back(out.cls->trace(k));
    }
    return out;
}

geom::ProjPoint point_off_lines(const CubicSurface& X, const LineSet& lines) {
    const Field& F = X.tower().base();
    const Field& C = *lines.field;
    CubicForm f = X.form();
    std::optional<geom::ProjPoint> found;
    geom::for_each_proj_point(3, F, [&](const geom::Vec& p) {
        if (found || !f.eval(p).is_zero()) return;
        geom::Vec pc;
        for (const Elem& x : p) pc.push_back(C.from_base(x.coeff(0)));
        for (const auto& l : lines.lines)
            if (l.contains(pc)) return;
        found.emplace(p);
    });
    if (!found) throw LookupError("every rational point lies on a line", false);
    return *found;
}

}  // namespace dpfq::cubic
