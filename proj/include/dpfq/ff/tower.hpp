#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <json.hpp>

#include "dpfq/ff/field.hpp"
#include "dpfq/ff/poly.hpp"

namespace dpfq::ff {

/// A chain GF(q) = K_0 ⊂ K_1 ⊂ ... of finite fields with fixed embeddings.
///
/// Level i is represented over the base GF(q) (not over K_{i-1}); the
/// embedding K_i -> K_{i+1} is stored as the image of the generator of K_i,
/// and embeddings across several levels are composites of adjacent ones, so
/// they are path independent. Immutable after construction.
class FieldTower {
public:
    /// `abs_degrees` are degrees over GF(p); the first is the base degree k with
    /// q = p^k, and each must divide the next.
    static FieldTower make(uint32_t p, const std::vector<int>& abs_degrees, uint64_t seed = 0);
    /// Tower over GF(q) with levels of the given degrees over GF(q).
    static FieldTower over(uint64_t q, const std::vector<int>& rel_degrees, uint64_t seed = 0);

    uint32_t p() const noexcept { return base_->p(); }
    uint64_t q() const noexcept { return base_->q(); }
    uint64_t seed() const noexcept { return seed_; }
    int num_levels() const noexcept { return static_cast<int>(levels_.size()); }
    const Field& level(int i) const { return *levels_.at(i); }
    const Field& base() const { return *levels_.front(); }
    const Field& top() const { return *levels_.back(); }
    /// Level index with the given degree over GF(q), or -1.
    int find_level(int rel_degree) const noexcept;
    /// Level index owning x; throws if x belongs to another tower.
    int level_of(const Elem& x) const;

    /// Image of x (from a lower or equal level) in level `to`.
    Elem embed(const Elem& x, int to) const;
    UniPoly embed(const UniPoly& f, int to) const;
    /// Preimage of x in level `to` (below x's level); throws if x is not in that subfield.
    Elem descend(const Elem& x, int to) const;
    bool lies_in(const Elem& x, int to) const;

    /// Serializable descriptor: p, degrees, moduli, seed.
    nlohmann::json descriptor() const;

private:
    std::shared_ptr<const BaseField> base_;
    uint64_t seed_ = 0;
    std::vector<std::shared_ptr<const Field>> levels_;
    // images_[i][j]: image of gen(level i)^j in level i+1.
    std::vector<std::vector<Elem>> images_;

    Elem embed_step(const Elem& x, int from) const;
};

/// Process-wide cache of towers keyed by (q, degrees, seed); the returned towers live
/// for the rest of the program, so pointers into them stay valid.
std::shared_ptr<const FieldTower> shared_tower(uint64_t q, const std::vector<int>& rel_degrees, uint64_t seed = 0);

/// Level moduli depend only on (q, degree, seed), so a level of one tower can be read
/// as the same-degree level of another built with the same seed. Copies coefficients;
/// throws if the two fields have different moduli.
Elem transfer(const Elem& x, const Field& target);

/// One root, in level `target`, of f irreducible of degree d over a lower level;
/// d must divide the relative degree between the two levels.
Elem edf_find_root(const FieldTower& tower, const UniPoly& f, int target, uint64_t seed = 0);

/// Seeded random search for a monic irreducible polynomial of degree m over `base_level`.
std::vector<Elem> find_irreducible(const Field& base_level, int m, uint64_t seed);

}  // namespace dpfq::ff
