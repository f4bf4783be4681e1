#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

// Integer utilities shared by every other component: factorization,
// valuations, modular exponentiation, multiplicative order, CRT.
// Everything is unsigned 64-bit; multiplications that could exceed the
// range go through checked_mul / checked_pow and throw std::overflow_error.

namespace twosq::arith {

struct PrimePower {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

// value = product of prime^exponent, primes strictly increasing.
// value = 1 has an empty factor list.
struct Factorization {
    std::uint64_t value = 1;
    std::vector<PrimePower> factors;

    bool operator==(const Factorization&) const = default;
};

// n = odd_part * 2^exponent with odd_part odd.
struct TwoAdicSplit {
    std::uint32_t exponent = 0;
    std::uint64_t odd_part = 1;

    bool operator==(const TwoAdicSplit&) const = default;
};

struct OrderValue {
    std::uint64_t base = 1;     // reduced mod modulus
    std::uint64_t modulus = 2;
    std::uint64_t order = 1;    // least e >= 1 with base^e = 1 mod modulus
};

struct Congruence {
    std::uint64_t residue = 0;
    std::uint64_t modulus = 1;

    bool operator==(const Congruence&) const = default;
};

// Throwing guards for products that must stay inside 64 bits.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime(std::uint64_t n);

// Increasing primes <= limit (sieve of Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

std::uint64_t isqrt(std::uint64_t n);

// Trial division against a shared prime table, with a primality test on the
// shrinking cofactor so large prime factors are recognized early. Rejects 0.
Factorization factorize(std::uint64_t n);

// n = odd_part * 2^exponent. Rejects 0.
TwoAdicSplit two_adic_split(std::uint64_t n);

// Euler totient from an existing factorization.
std::uint64_t totient(const Factorization& f);

// Least e >= 1 with base^e = 1 (mod modulus). Requires modulus >= 2 and
// gcd(base, modulus) = 1; computed by shrinking the totient prime by prime.
OrderValue multiplicative_order(std::uint64_t base, std::uint64_t modulus);

// Unique residue mod the product of the (pairwise coprime) moduli.
// Residues are reduced on entry; non-coprime moduli are rejected.
Congruence crt_combine(std::span<const Congruence> parts);

}  // namespace twosq::arith
