#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dpfq/weyl/lattice.hpp"

namespace dpfq::weyl {

constexpr int kTraceLength = 12;

struct ClassRecord {
    int r = 0;                  // 6 or 7
    int id = 0;                 // 1-based position in the table
    std::string name;           // "E6-07"
    std::string alias;          // empty unless anchored
    int order = 0;
    std::vector<int> cycle_type;
    std::array<int64_t, kTraceLength> traces{};  // tr(M^n), n = 1..12
    IntPoly charpoly;
    uint64_t size = 0;
    WeylElement rep;

    /// t_n for any n >= 1, using periodicity in the element order.
    int64_t trace(int n) const;
    std::string display_name() const { return alias.empty() ? name : name + " (" + alias + ")"; }
};

/// Conjugacy classes of W(E6) (r = 6) or W(E7) (r = 7).
///
/// W(E6) is enumerated in full. For W(E7) the classes are found from sampled elements;
/// each new class is grown as the conjugation orbit of a representative, and sampling
/// stops once the class sizes add up to the group order.
///
/// Building aborts with InternalError if (cycle type, characteristic polynomial) does not
/// separate the classes, since class_of relies on it.
class WeylTable {
public:
    /// Shared, lazily built table.
    static const WeylTable& get(int r);
    static WeylTable build(int r, uint64_t seed = 0);

    int r() const noexcept { return r_; }
    const Lattice& lattice() const noexcept { return *L_; }
    uint64_t group_order() const noexcept { return group_order_; }
    const std::vector<ClassRecord>& classes() const noexcept { return classes_; }
    const ClassRecord& at(int id) const { return classes_.at(id - 1); }
    const std::vector<WeylElement>& generators() const noexcept { return gens_; }
    /// W(E6) only: every element, identity first.
    const std::vector<WeylElement>& elements() const;

    const ClassRecord& class_of(const WeylElement& w) const;
    const ClassRecord& by_alias(const std::string& alias) const;
    const ClassRecord& lookup_cycle_type(const std::vector<int>& cycle_type) const;
    const ClassRecord& lookup_charpoly(const IntPoly& charpoly) const;
    /// Classes whose t_1..t_m equal the given prefix.
    std::vector<const ClassRecord*> match_traces(const std::vector<int64_t>& prefix) const;
    const ClassRecord& lookup_traces(const std::vector<int64_t>& prefix) const;
    /// Eigenvalues of Frobenius on the whole lattice (r + 1 roots of unity).
    const ClassRecord& lookup_eigenvalues(const std::vector<RootOfUnity>& eigenvalues) const;
    /// Least m such that t_1..t_m separates every pair of classes, or -1.
    int separating_trace_prefix() const;

    /// The central element acting as +1 on K and -1 on its orthogonal complement (r = 7).
    WeylElement geiser() const;

private:
    int r_ = 0;
    const Lattice* L_ = nullptr;
    uint64_t group_order_ = 0;
    std::vector<WeylElement> gens_;
    std::vector<ClassRecord> classes_;
    std::vector<WeylElement> elements_;
    std::unordered_map<uint64_t, int> element_class_;  // W(E6): element key -> class index
    std::unordered_map<std::string, int> signature_index_;

    void finish(std::vector<ClassRecord> classes);
};

/// (cycle type, characteristic polynomial) as a string key.
std::string signature(const std::vector<int>& cycle_type, const IntPoly& charpoly);

/// Class of geiser * w for w in c (E7 classes).
const ClassRecord& geiser_twist(const ClassRecord& c);
/// E7 class of w extended to Z^{1,7} by fixing e_7, for w in the E6 class c.
const ClassRecord& blowup_embed(const ClassRecord& c);
/// Extends an E6 element to the E7 lattice fixing e_7.
WeylElement blowup_element(const WeylElement& w);

/// One row per class: id, alias, order, cycle type, size, characteristic polynomial, t_1..t_12.
std::string weyl_table_csv(const WeylTable& table);

}  // namespace dpfq::weyl
