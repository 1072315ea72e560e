#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dpfq::cli {

/// Directory for certificates: $DPFQ_WORKDIR, or ./dpfq-work.
std::filesystem::path work_directory();

struct RealizationRow {
    uint64_t q = 0;
    std::string alias;
    std::string class_name;
    int order = 0;
    std::string certificate;
    bool ok = false;
    std::string note;
};

/// For each q: a C14 cubic surface, its blow-up class (47) at a rational point off the lines,
/// and the Geiser twist (56); over GF(3) also the fixed conic bundle (35) and its twist (28).
/// Certificates are written to `dir`.
std::vector<RealizationRow> realize_all(const std::vector<uint64_t>& qs, const std::filesystem::path& dir, uint64_t seed = 0);

/// q,alias,class,order,ok,certificate,note
std::string rows_csv(const std::vector<RealizationRow>& rows);

}  // namespace dpfq::cli
