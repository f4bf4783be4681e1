#pragma once

#include <cstdint>
#include <vector>

// Brute-force ground truth, independent of the closed-form classifier.
// enumerate_s builds S_n straight from the definition; the nat_* checks test
// natural numbers through the prime-factorization criterion.

namespace twosq::oracle {

struct ResidueSet {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> words;  // bit x set iff x in S_n

    bool contains(std::uint64_t x) const {
        return (words[x >> 6] >> (x & 63)) & 1u;
    }
    std::uint64_t popcount() const;
};

inline constexpr std::uint64_t kDefaultOracleCeiling = 1'000'000;

// All pairwise sums of the distinct squares mod n. O(#squares^2) time,
// O(n) bits; refuses n above the ceiling so nobody quadratically blows up
// by accident.
ResidueSet enumerate_s(std::uint64_t n, std::uint64_t ceiling = kDefaultOracleCeiling);

// m is a sum of two integer squares iff no prime = 3 mod 4 divides m to an
// odd power (0 and 1 count as sums).
bool nat_is_two_squares(std::uint64_t m);

// m = a^2 + b^2 (+ 2^i) (+ 2^j) with at most max_powers power terms
// (max_powers in {0, 1, 2}; exponents start at 0 and may repeat).
bool nat_two_squares_plus_powers(std::uint64_t m, std::uint32_t max_powers);

}  // namespace twosq::oracle
