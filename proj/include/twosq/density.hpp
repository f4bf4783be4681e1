#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

// Extremal-density sequences for r(S_n) and r(N_n). The moduli here grow as
// products of prime powers and overflow 64 bits quickly, so densities are
// carried as arbitrary-precision rationals; only this component needs them.

namespace twosq::density {

using BigRational = mpq_class;

// First `count` primes congruent to 3 mod 4, increasing.
std::vector<std::uint64_t> primes_3mod4(std::size_t count);

struct DensitySequencePoint {
    std::uint32_t prime_count = 1;  // how many 3-mod-4 primes in the product
    std::uint32_t exponent = 1;     // shared exponent s
    // Product of the prime powers when it fits 64 bits; empty otherwise.
    std::optional<std::uint64_t> modulus;
    BigRational density_n;   // exact r(N) of the product modulus
    BigRational limit_value; // s -> infinity limit: 1 - prod(1 - 1/(1+p))
};

// r(N) of the modulus formed by raising the first `prime_count` primes
// = 3 mod 4 to the power `exponent`, combined multiplicatively; never by
// enumeration.
DensitySequencePoint density_point(std::uint32_t prime_count, std::uint32_t exponent);

// r(S) of 5^k, which is exactly 1 for every k >= 1.
BigRational five_power_s_density(std::uint32_t k);

}  // namespace twosq::density
