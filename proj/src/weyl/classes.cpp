#include "dpfq/weyl/classes.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dpfq/error.hpp"

namespace dpfq::weyl {

namespace {

constexpr uint64_t kOrderE6 = 51840;
constexpr uint64_t kOrderE7 = 2903040;

void check_isometry(const Lattice& L, const IntMatrix& m) {
    int n = L.rank();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LatVec a{}, b{};
            a[i] = 1;
            b[j] = 1;
            if (L.dot(mat_apply(m, a, n), mat_apply(m, b, n)) != L.dot(a, b))
                throw InternalError("generator does not preserve the intersection form");
        }
    if (mat_apply(m, L.canonical(), n) != L.canonical()) throw InternalError("generator moves K");
}

ClassRecord make_record(const Lattice& L, const WeylElement& rep, uint64_t size) {
    ClassRecord c;
    c.r = L.r();
    c.rep = rep;
    c.size = size;
    c.order = rep.order();
    c.cycle_type = rep.cycle_type();
    int n = L.rank();
    IntMatrix m = rep.matrix(L);
    IntMatrix p = m;
    for (int k = 0; k < kTraceLength; ++k) {
        c.traces[k] = mat_trace(p, n);
        p = mat_mul(p, m, n);
    }
    c.charpoly = charpoly(m, n);
    std::vector<int64_t> t(c.traces.begin(), c.traces.end());
    if (charpoly_from_traces(t, n) != c.charpoly)
        throw InternalError("characteristic polynomial disagrees with the power traces");
    return c;
}

std::string cycle_type_string(const std::vector<int>& ct) {
    std::ostringstream os;
    for (size_t i = 0; i < ct.size();) {
        size_t j = i;
        while (j < ct.size() && ct[j] == ct[i]) ++j;
        os << (i ? " " : "") << ct[i];
        if (j - i > 1) os << '^' << (j - i);
        i = j;
    }
    return os.str();
}

// Conjugation orbit of w under the generators (each an involution).
uint64_t conjugacy_class_size(const Lattice& L, const std::vector<WeylElement>& gens, const WeylElement& w) {
    std::unordered_set<uint64_t> seen{w.key(L)};
    std::vector<WeylElement> frontier{w}, next;
    while (!frontier.empty()) {
        next.clear();
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                WeylElement y = s * x * s;
                if (seen.insert(y.key(L)).second) next.push_back(y);
            }
        std::swap(frontier, next);
    }
    return seen.size();
}

}  // namespace

int64_t ClassRecord::trace(int n) const {
    if (n < 1) throw InvalidArgument("trace index must be positive");
    int k = n % order;
    if (k == 0) return r + 1;
    if (k <= kTraceLength) return traces[k - 1];
    return power_sums(charpoly, k).back();
}

std::string signature(const std::vector<int>& cycle_type, const IntPoly& charpoly) {
    return cycle_type_string(cycle_type) + "|" + poly_to_string(charpoly);
}

const WeylTable& WeylTable::get(int r) {
    static std::once_flag f6, f7;
    static WeylTable t6, t7;
    if (r == 6) {
        std::call_once(f6, [] { t6 = build(6); });
        return t6;
    }
    if (r == 7) {
        std::call_once(f7, [] { t7 = build(7); });
        return t7;
    }
    throw InvalidArgument("Weyl table rank must be 6 or 7");
}

WeylTable WeylTable::build(int r, uint64_t seed) {
    WeylTable t;
    t.r_ = r;
    t.L_ = &weyl::lattice(r);
    const Lattice& L = *t.L_;
    for (const auto& a : L.simple_roots()) {
        t.gens_.push_back(WeylElement::reflection(L, a));
        check_isometry(L, t.gens_.back().matrix(L));
    }
    std::vector<ClassRecord> classes;

    if (r == 6) {
        t.group_order_ = kOrderE6;
        std::unordered_map<uint64_t, int> index;
        t.elements_.push_back(WeylElement::identity(L));
        index[t.elements_[0].key(L)] = 0;
        for (size_t i = 0; i < t.elements_.size(); ++i)
            for (const auto& s : t.gens_) {
                WeylElement y = s * t.elements_[i];
                if (index.emplace(y.key(L), static_cast<int>(t.elements_.size())).second) t.elements_.push_back(y);
            }
        if (t.elements_.size() != kOrderE6)
            throw InternalError("W(E6) closure has " + std::to_string(t.elements_.size()) + " elements");

        std::vector<int> cls(t.elements_.size(), -1);
        for (size_t i = 0; i < t.elements_.size(); ++i) {
            if (cls[i] >= 0) continue;
            int c = static_cast<int>(classes.size());
            std::vector<int> orbit{static_cast<int>(i)};
            cls[i] = c;
            for (size_t k = 0; k < orbit.size(); ++k)
                for (const auto& s : t.gens_) {
                    int j = index.at((s * t.elements_[orbit[k]] * s).key(L));
                    if (cls[j] < 0) {
                        cls[j] = c;
                        orbit.push_back(j);
                    }
                }
            classes.push_back(make_record(L, t.elements_[i], orbit.size()));
        }
        t.finish(std::move(classes));
        // Sorting reorders classes; map old indices through the (unique) signatures.
        std::map<int, int> remap;
        for (size_t i = 0; i < t.elements_.size(); ++i) {
            int old = cls[i];
            if (!remap.count(old)) {
                const WeylElement& w = t.elements_[i];
                IntMatrix m = w.matrix(L);
                remap[old] = t.signature_index_.at(signature(w.cycle_type(), charpoly(m, L.rank())));
            }
            t.element_class_[t.elements_[i].key(L)] = remap[old];
        }
        return t;
    }

    t.group_order_ = kOrderE7;
    WeylElement gamma = t.geiser();
    std::mt19937_64 rng(seed);
    std::unordered_set<std::string> known;
    uint64_t total = 0;
    auto consider = [&](const WeylElement& w) {
        std::string sig = signature(w.cycle_type(), charpoly(w.matrix(L), L.rank()));
        if (known.count(sig)) return;
        known.insert(sig);
        uint64_t size = conjugacy_class_size(L, t.gens_, w);
        total += size;
        classes.push_back(make_record(L, w, size));
    };
    const int kMaxSamples = 20000;
    for (int sample = 0; sample < kMaxSamples && total < kOrderE7; ++sample) {
        // Alternate full random words and words in a random parabolic subgroup.
        std::vector<int> allowed;
        if (sample % 2 == 0) {
            for (int i = 0; i < r; ++i) allowed.push_back(i);
        } else {
            for (int i = 0; i < r; ++i)
                if (rng() & 1) allowed.push_back(i);
            if (allowed.empty()) allowed.push_back(static_cast<int>(rng() % r));
        }
        WeylElement w = WeylElement::identity(L);
        for (int step = 0; step < 40; ++step) w = t.gens_[allowed[rng() % allowed.size()]] * w;
        int ord = w.order();
        for (int k = 1; k <= ord; ++k) {
            if (ord % k) continue;
            WeylElement x = w.pow(k);
            consider(x);
            consider(gamma * x);
        }
    }
    if (total != kOrderE7) {
        std::ostringstream os;
        os << "W(E7) class search stopped at " << classes.size() << " classes covering " << total << " of "
           << kOrderE7 << " elements; (cycle type, characteristic polynomial) may not separate the classes";
        throw InternalError(os.str());
    }
    t.finish(std::move(classes));
    return t;
}

void WeylTable::finish(std::vector<ClassRecord> classes) {
    uint64_t total = 0;
    for (const auto& c : classes) {
        total += c.size;
        if (group_order_ % c.size || group_order_ % c.order) throw InternalError("class size or order does not divide |W|");
    }
    if (total != group_order_) throw InternalError("class sizes do not add up to the group order");

    std::sort(classes.begin(), classes.end(), [](const ClassRecord& a, const ClassRecord& b) {
        if (a.order != b.order) return a.order < b.order;
        if (a.cycle_type != b.cycle_type) return a.cycle_type > b.cycle_type;
        return a.charpoly < b.charpoly;
    });
    std::ostringstream collisions;
    for (size_t i = 0; i < classes.size(); ++i) {
        ClassRecord& c = classes[i];
        c.id = static_cast<int>(i) + 1;
        std::ostringstream name;
        name << 'E' << r_ << '-' << (c.id < 10 ? "0" : "") << c.id;
        c.name = name.str();
        auto [it, fresh] = signature_index_.emplace(signature(c.cycle_type, c.charpoly), static_cast<int>(i));
        if (!fresh) collisions << c.name << " and " << classes[it->second].name << " share " << it->first << "\n";
    }
    if (!collisions.str().empty())
        throw InternalError("class signatures are not separating:\n" + collisions.str());
    classes_ = std::move(classes);

    auto unique = [&](auto pred) -> ClassRecord* {
        ClassRecord* found = nullptr;
        for (auto& c : classes_)
            if (pred(c)) {
                if (found) return nullptr;
                found = &c;
            }
        return found;
    };
    if (r_ == 6) {
        if (auto* c = unique([](const ClassRecord& c) { return c.order == 1; })) c->alias = "C1";
        if (auto* c = unique([](const ClassRecord& c) { return c.order % 9 == 0; }); c && c->order == 9) c->alias = "C14";
        return;
    }
    WeylElement gamma = geiser();
    auto twist = [&](ClassRecord* c) { return &classes_[signature_index_.at(signature(
                                                   (gamma * c->rep).cycle_type(), charpoly((gamma * c->rep).matrix(*L_), L_->rank())))]; };
    if (auto* c = unique([](const ClassRecord& c) { return c.order == 9; })) {
        c->alias = "47";
        twist(c)->alias = "56";
    }
    IntPoly anchor = charpoly_from_roots({RootOfUnity(0, 1), RootOfUnity(0, 1), RootOfUnity(1, 2), RootOfUnity(1, 2),
                                          RootOfUnity(1, 4), RootOfUnity(3, 4), RootOfUnity(1, 4), RootOfUnity(3, 4)});
    if (auto* c = unique([&](const ClassRecord& c) { return c.charpoly == anchor; })) {
        c->alias = "35";
        twist(c)->alias = "28";
    }
}

const std::vector<WeylElement>& WeylTable::elements() const {
    if (r_ != 6) throw InvalidArgument("only W(E6) is stored element by element");
    return elements_;
}

const ClassRecord& WeylTable::class_of(const WeylElement& w) const {
    if (w.size() != L_->num_curves()) throw InvalidArgument("element acts on the wrong curve set");
    if (r_ == 6) {
        auto it = element_class_.find(w.key(*L_));
        if (it == element_class_.end()) throw InvalidArgument("permutation is not in W(E6)");
        return classes_[it->second];
    }
    auto it = signature_index_.find(signature(w.cycle_type(), charpoly(w.matrix(*L_), L_->rank())));
    if (it == signature_index_.end()) throw InvalidArgument("permutation is not in W(E7)");
    return classes_[it->second];
}

const ClassRecord& WeylTable::by_alias(const std::string& alias) const {
    for (const auto& c : classes_)
        if (c.alias == alias) return c;
    throw LookupError("no class with alias " + alias, false);
}

namespace {

const ClassRecord& pick_unique(std::vector<const ClassRecord*> hits, const std::string& what) {
    if (hits.empty()) throw LookupError("no class matches " + what, false);
    if (hits.size() > 1) {
        std::string names;
        for (auto* c : hits) names += " " + c->name;
        throw LookupError(what + " is ambiguous:" + names, true);
    }
    return *hits.front();
}

}  // namespace

const ClassRecord& WeylTable::lookup_cycle_type(const std::vector<int>& cycle_type) const {
    std::vector<int> ct = cycle_type;
    std::sort(ct.rbegin(), ct.rend());
    std::vector<const ClassRecord*> hits;
    for (const auto& c : classes_)
        if (c.cycle_type == ct) hits.push_back(&c);
    return pick_unique(hits, "cycle type " + cycle_type_string(ct));
}

const ClassRecord& WeylTable::lookup_charpoly(const IntPoly& cp) const {
    std::vector<const ClassRecord*> hits;
    for (const auto& c : classes_)
        if (c.charpoly == cp) hits.push_back(&c);
    return pick_unique(hits, "characteristic polynomial " + poly_to_string(cp));
}

std::vector<const ClassRecord*> WeylTable::match_traces(const std::vector<int64_t>& prefix) const {
    std::vector<const ClassRecord*> hits;
    for (const auto& c : classes_) {
        bool ok = true;
        for (size_t n = 0; n < prefix.size() && ok; ++n) ok = c.trace(static_cast<int>(n) + 1) == prefix[n];
        if (ok) hits.push_back(&c);
    }
    return hits;
}

const ClassRecord& WeylTable::lookup_traces(const std::vector<int64_t>& prefix) const {
    std::ostringstream os;
    os << "trace prefix";
    for (auto t : prefix) os << ' ' << t;
    return pick_unique(match_traces(prefix), os.str());
}

const ClassRecord& WeylTable::lookup_eigenvalues(const std::vector<RootOfUnity>& eigenvalues) const {
    if (static_cast<int>(eigenvalues.size()) != L_->rank())
        throw InvalidArgument("expected " + std::to_string(L_->rank()) + " eigenvalues");
    return lookup_charpoly(charpoly_from_roots(eigenvalues));
}

int WeylTable::separating_trace_prefix() const {
    for (int m = 1; m <= kTraceLength; ++m) {
        std::set<std::vector<int64_t>> seen;
        for (const auto& c : classes_) seen.insert(std::vector<int64_t>(c.traces.begin(), c.traces.begin() + m));
        if (seen.size() == classes_.size()) return m;
    }
    return -1;
}

WeylElement WeylTable::geiser() const {
    if (r_ != 7) throw InvalidArgument("the Geiser involution lives on the E7 lattice");
    const Lattice& L = *L_;
    IntMatrix m{};
    // gamma(x) = (x.K) K - x.
    for (int j = 0; j < L.rank(); ++j) {
        LatVec b{};
        b[j] = 1;
        int c = L.dot(b, L.canonical());
        for (int i = 0; i < L.rank(); ++i) m[i][j] = c * L.canonical()[i] - b[i];
    }
    return WeylElement::from_matrix(L, m);
}

const ClassRecord& geiser_twist(const ClassRecord& c) {
    if (c.r != 7) throw InvalidArgument("Geiser twist applies to E7 classes");
    const WeylTable& t = WeylTable::get(7);
    return t.class_of(t.geiser() * c.rep);
}

WeylElement blowup_element(const WeylElement& w) {
    const Lattice& L6 = lattice(6);
    if (w.size() != L6.num_curves()) throw InvalidArgument("blow-up expects an E6 element");
    IntMatrix m = w.matrix(L6);
    m[7] = {};
    for (int i = 0; i < 7; ++i) m[i][7] = 0;
    m[7][7] = 1;
    return WeylElement::from_matrix(lattice(7), m);
}

const ClassRecord& blowup_embed(const ClassRecord& c) {
    if (c.r != 6) throw InvalidArgument("blow-up embedding starts from an E6 class");
    return WeylTable::get(7).class_of(blowup_element(c.rep));
}

std::string weyl_table_csv(const WeylTable& table) {
    std::ostringstream os;
    os << "id,name,alias,order,cycle_type,size,charpoly";
    for (int n = 1; n <= kTraceLength; ++n) os << ",t" << n;
    os << "\n";
    for (const auto& c : table.classes()) {
        os << c.id << ',' << c.name << ',' << c.alias << ',' << c.order << ',' << cycle_type_string(c.cycle_type) << ','
           << c.size << ',' << poly_to_string(c.charpoly);
        for (auto t : c.traces) os << ',' << t;
        os << "\n";
    }
    return os.str();
}

}  // namespace dpfq::weyl
