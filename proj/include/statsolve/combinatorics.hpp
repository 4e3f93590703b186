#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace statsolve {

// Lexicographic k-combinations of {0,...,n-1}. `combo` must hold a valid
// combination (e.g. first_combination); returns false after the last one.
inline void first_combination(std::vector<int>& combo, int k) {
    combo.resize(k);
    for (int i = 0; i < k; ++i) combo[i] = i;
}

inline bool next_combination(std::vector<int>& combo, int n) {
    const int k = static_cast<int>(combo.size());
    for (int i = k - 1; i >= 0; --i) {
        if (combo[i] < n - k + i) {
            ++combo[i];
            for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Restricted growth strings enumerate set partitions of {0,...,n-1} in
// lexicographic order: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]). The first
// string (all zeros) is the single-block partition; the last is all
// singletons.
inline void first_rgs(std::vector<int>& rgs, int n) { rgs.assign(n, 0); }

inline bool next_rgs(std::vector<int>& rgs) {
    const int n = static_cast<int>(rgs.size());
    for (int i = n - 1; i >= 1; --i) {
        int prefix_max = 0;
        for (int j = 0; j < i; ++j) prefix_max = rgs[j] > prefix_max ? rgs[j] : prefix_max;
        if (rgs[i] <= prefix_max) {
            ++rgs[i];
            for (int j = i + 1; j < n; ++j) rgs[j] = 0;
            return true;
        }
    }
    return false;
}

// Blocks of an RGS partition as bitmasks, indexed by block id.
inline std::vector<std::uint64_t> rgs_blocks(const std::vector<int>& rgs) {
    int num_blocks = 0;
    for (int b : rgs) num_blocks = b + 1 > num_blocks ? b + 1 : num_blocks;
    std::vector<std::uint64_t> blocks(num_blocks, 0);
    for (std::size_t i = 0; i < rgs.size(); ++i) blocks[rgs[i]] |= (1ULL << i);
    return blocks;
}

inline int popcount64(std::uint64_t mask) { return std::popcount(mask); }

}  // namespace statsolve
