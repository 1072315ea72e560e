#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpfq/weyl/classes.hpp"

namespace dpfq::cli {

inline constexpr const char* kCensusSchema = "dpfq.census-report/1";

/// Point counts of cubic forms over GF(2), GF(4), GF(8), GF(16), kept up to date while the
/// coefficient mask walks a Gray code: each value of a monomial on P^3(GF(2^n)) is stored as n
/// bit planes over the points, so flipping a coefficient XORs one monomial's planes into
/// the accumulator and the zeros of the form are the points where every plane is clear.
class GrayCounter {
public:
    static constexpr int kLevels = 4;

    GrayCounter();
    /// Resets the accumulator to the form with this 20-bit mask.
    void set(uint32_t mask);
    /// Toggles the coefficient of monomial m.
    void flip(int m);
    uint32_t mask() const noexcept { return mask_; }
    /// #X(GF(2^n)) for the current form, n = 1..kLevels.
    uint64_t count(int n) const;

private:
    struct Planes {
        int bits = 0;
        uint64_t points = 0;
        size_t words = 0;
        // data[(m * bits + b) * words + w]
        std::vector<uint64_t> data;
    };
    struct Level {
        const Planes* planes = nullptr;
        std::vector<uint64_t> acc;  // bits * words
    };
    /// Shared, built once.
    static const std::array<Planes, kLevels>& shared_planes();
    std::array<Level, kLevels> levels_;
    uint32_t mask_ = 0;
};

struct ClassTally {
    const weyl::ClassRecord* cls = nullptr;
    uint64_t count = 0;
    /// Smallest coefficient mask in the class.
    uint32_t representative = 0;
};

struct CensusReport {
    uint64_t q = 2;
    uint64_t scanned = 0;
    uint64_t smooth = 0;
    /// Smooth forms whose trace prefix matched no class (must be 0).
    uint64_t unmatched = 0;
    int prefix_length = 0;
    int jobs = 1;
    double seconds = 0;
    /// Present classes, in table order.
    std::vector<ClassTally> present;
    std::vector<const weyl::ClassRecord*> absent;

    nlohmann::json to_json() const;
    /// One row per E6 class: id, name, alias, order, count, representative.
    std::string to_csv() const;
};

struct CensusOptions {
    int jobs = 1;
    /// Range [begin, end) of Gray-code positions; position k scans the mask k ^ (k >> 1).
    uint32_t begin = 1;
    uint32_t end = uint32_t{1} << 20;
};

/// Classifies every smooth cubic form over GF(2) by t_1..t_m, m the shortest trace prefix
/// that separates the E6 classes. Only q = 2 is supported.
CensusReport census_cubic(uint64_t q, const CensusOptions& opt = {});

}  // namespace dpfq::cli
