#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sdimlab {

/// Desk-scale resource limits. Exceeding one raises BudgetExceeded.
struct Budget {
    std::size_t max_edges = 100'000;         // edges after arrangement
    std::uint64_t max_pair_checks = 10'000'000;
    std::uint64_t max_words = 10'000'000;    // n^k for IFS word enumeration

    /// Reads SDIMLAB_BUDGET when set. Accepted forms: a single integer (applies
    /// to every limit) or a comma list such as "edges=5000,pairs=1e6,words=4096".
    static Budget from_env();
    static Budget parse(std::string_view text);
};

}  // namespace sdimlab
