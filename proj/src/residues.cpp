#include "twosq/residues.hpp"

#include <stdexcept>

namespace twosq::residues {

namespace {

using u64 = std::uint64_t;

void require_prime(u64 p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("expected a prime modulus base");
}

void require_exponent(std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("prime-power exponent must be >= 1");
}

void require_residue(u64 x, u64 modulus) {
    if (x >= modulus) throw std::invalid_argument("residue out of range");
}

}  // namespace

PrimePowerClass classify_prime_power(std::uint64_t p, std::uint32_t k) {
    require_prime(p);
    require_exponent(k);
    PrimePowerClass c;
    c.prime = p;
    c.exponent = k;
    c.tag = (p == 2) ? PrimeClass::Two : (p % 4 == 1 ? PrimeClass::OneMod4 : PrimeClass::ThreeMod4);
    return c;
}

bool member_2k(std::uint32_t k, std::uint64_t x) {
    require_exponent(k);
    if (k > 63) throw std::invalid_argument("member_2k: modulus exceeds 64 bits");
    require_residue(x, 1ull << k);
    if (k == 1) return true;  // S_2 = Z_2
    if (x == 0) return true;
    u64 odd = x >> __builtin_ctzll(x);
    return (odd & 3) == 1;
}

bool member_p1mod4(std::uint64_t p, std::uint32_t k, std::uint64_t x) {
    require_prime(p);
    require_exponent(k);
    if (p % 4 != 1) throw std::invalid_argument("member_p1mod4: prime is not 1 mod 4");
    require_residue(x, arith::checked_pow(p, k));
    return true;
}

bool member_p3mod4(std::uint64_t p, std::uint32_t k, std::uint64_t x) {
    require_prime(p);
    require_exponent(k);
    if (p % 4 != 3) throw std::invalid_argument("member_p3mod4: prime is not 3 mod 4");
    require_residue(x, arith::checked_pow(p, k));
    if (x == 0) return true;
    std::uint32_t valuation = 0;
    while (x % p == 0) {
        x /= p;
        ++valuation;
    }
    return (valuation & 1) == 0;
}

bool member_prime_power(std::uint64_t p, std::uint32_t k, std::uint64_t x) {
    if (p == 2) return member_2k(k, x);
    if (p % 4 == 1) return member_p1mod4(p, k, x);
    return member_p3mod4(p, k, x);
}

MembershipVerdict member(std::uint64_t n, std::uint64_t x, const arith::Factorization& f) {
    if (n == 0) throw std::invalid_argument("member: modulus must be positive");
    require_residue(x, n == 1 ? 1 : n);
    if (f.value != n) throw std::invalid_argument("member: factorization does not match n");

    MembershipVerdict verdict;
    verdict.modulus = n;
    verdict.residue = x;
    for (const auto& pp : f.factors) {
        u64 q = arith::checked_pow(pp.prime, pp.exponent);
        if (!member_prime_power(pp.prime, pp.exponent, x % q)) {
            verdict.in_s = false;
            verdict.witness = pp;
            return verdict;
        }
    }
    return verdict;
}

MembershipVerdict member(std::uint64_t n, std::uint64_t x) {
    return member(n, x, arith::factorize(n));
}

ClassCounts count_prime_power(std::uint64_t p, std::uint32_t k) {
    require_prime(p);
    require_exponent(k);
    u64 q = arith::checked_pow(p, k);

    ClassCounts counts;
    counts.modulus = q;
    if (p == 2) {
        counts.count_s = (k == 1) ? 2 : (1ull << (k - 1)) + 1;
    } else if (p % 4 == 1) {
        counts.count_s = q;
    } else {
        u64 removed = (k % 2 == 0) ? (q - 1) / (p + 1) : (q - p) / (p + 1);
        counts.count_s = q - removed;
    }
    counts.count_n = q - counts.count_s;
    counts.density_s = make_rational(counts.count_s, q);
    counts.density_n = make_rational(counts.count_n, q);
    return counts;
}

ClassCounts count(const arith::Factorization& f) {
    ClassCounts counts;
    counts.modulus = f.value;
    counts.count_s = 1;
    for (const auto& pp : f.factors)
        counts.count_s *= count_prime_power(pp.prime, pp.exponent).count_s;
    counts.count_n = f.value - counts.count_s;
    counts.density_s = make_rational(counts.count_s, f.value);
    counts.density_n = make_rational(counts.count_n, f.value);
    return counts;
}

ClassCounts count(std::uint64_t n) { return count(arith::factorize(n)); }

bool is_full_coverage(const arith::Factorization& f) {
    for (const auto& pp : f.factors)
        if (pp.exponent >= 2 && pp.prime % 4 != 1) return false;
    return true;
}

bool is_full_coverage(std::uint64_t n) { return is_full_coverage(arith::factorize(n)); }

}  // namespace twosq::residues
