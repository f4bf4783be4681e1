#pragma once

#include <cstdint>
#include <optional>

#include "twosq/arithmetic.hpp"
#include "twosq/rational.hpp"

// Closed-form classification of residues as sums of two squares mod n.
// S_n is the set of x in Z_n with x = a^2 + b^2 (a, b in Z_n, zero allowed),
// N_n its complement. Everything here works per prime power and combines
// through the CRT; nothing enumerates Z_n.

namespace twosq::residues {

enum class PrimeClass { Two, OneMod4, ThreeMod4 };

struct PrimePowerClass {
    PrimeClass tag = PrimeClass::Two;
    std::uint64_t prime = 2;
    std::uint32_t exponent = 1;
};

// Rejects non-primes and k = 0.
PrimePowerClass classify_prime_power(std::uint64_t p, std::uint32_t k);

struct MembershipVerdict {
    std::uint64_t modulus = 1;
    std::uint64_t residue = 0;
    bool in_s = true;
    // First prime-power component whose local test rejected the residue.
    std::optional<arith::PrimePower> witness;
};

struct ClassCounts {
    std::uint64_t modulus = 1;
    std::uint64_t count_s = 1;
    std::uint64_t count_n = 0;
    Rational density_s{1, 1};
    Rational density_n{0, 1};
};

// x in S_{2^k}: x = 0 or x = t*2^s with t = 1 mod 4. For k = 1 the whole
// ring is representable and the test always accepts.
bool member_2k(std::uint32_t k, std::uint64_t x);

// S_{p^k} = Z_{p^k} when p = 1 mod 4; the test only validates its inputs.
bool member_p1mod4(std::uint64_t p, std::uint32_t k, std::uint64_t x);

// x in S_{p^k} for p = 3 mod 4: x = 0 or the p-adic valuation of x is even.
bool member_p3mod4(std::uint64_t p, std::uint32_t k, std::uint64_t x);

// Local test for a single prime-power modulus, dispatching on the class.
bool member_prime_power(std::uint64_t p, std::uint32_t k, std::uint64_t x);

// Membership in S_n via the CRT: accept iff every prime-power component of f
// accepts the reduced residue. O(number of prime factors) per query.
MembershipVerdict member(std::uint64_t n, std::uint64_t x, const arith::Factorization& f);
MembershipVerdict member(std::uint64_t n, std::uint64_t x);

// |S_{p^k}| and |N_{p^k}| in closed form:
//   p = 2:        |S| = 2^(k-1) + 1 (k >= 2), |S| = 2 for k = 1
//   p = 1 mod 4:  |N| = 0
//   p = 3 mod 4:  |N| = (p^k - 1)/(p + 1) for even k, (p^k - p)/(p + 1) odd k
ClassCounts count_prime_power(std::uint64_t p, std::uint32_t k);

// |S_n| as the product of the per-prime-power counts.
ClassCounts count(const arith::Factorization& f);
ClassCounts count(std::uint64_t n);

// S_n = Z_n iff every prime dividing n at least twice is = 1 mod 4.
bool is_full_coverage(const arith::Factorization& f);
bool is_full_coverage(std::uint64_t n);

}  // namespace twosq::residues
