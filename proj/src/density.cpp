#include "twosq/density.hpp"

#include <stdexcept>

#include "twosq/arithmetic.hpp"

namespace twosq::density {

namespace {

// Exact r(N_{p^s}) for an odd prime, as a canonical big rational.
BigRational n_density_prime_power(std::uint64_t p, std::uint32_t s) {
    if (p % 4 == 1) return BigRational(0);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), s);
    mpz_class removed = (pk - ((s % 2 == 0) ? mpz_class(1) : mpz_class(p))) / mpz_class(p + 1);
    BigRational r(removed, pk);
    r.canonicalize();
    return r;
}

}  // namespace

std::vector<std::uint64_t> primes_3mod4(std::size_t count) {
    if (count == 0) throw std::invalid_argument("primes_3mod4: count must be >= 1");
    std::vector<std::uint64_t> out;
    std::uint32_t bound = 64;
    while (out.size() < count) {
        out.clear();
        for (std::uint32_t p : arith::primes_up_to(bound)) {
            if (p % 4 == 3) out.push_back(p);
            if (out.size() == count) break;
        }
        bound *= 2;
    }
    return out;
}

DensitySequencePoint density_point(std::uint32_t prime_count, std::uint32_t exponent) {
    if (prime_count == 0 || exponent == 0)
        throw std::invalid_argument("density_point: indices must be >= 1");

    DensitySequencePoint point;
    point.prime_count = prime_count;
    point.exponent = exponent;

    BigRational survive(1);   // prod (1 - r(N_{p^s}))
    BigRational limit_survive(1);
    std::uint64_t modulus = 1;
    bool fits = true;
    for (std::uint64_t p : primes_3mod4(prime_count)) {
        survive *= BigRational(1) - n_density_prime_power(p, exponent);
        limit_survive *= BigRational(p, p + 1);
        if (fits) {
            for (std::uint32_t i = 0; i < exponent && fits; ++i) {
                if (__builtin_mul_overflow(modulus, p, &modulus)) fits = false;
            }
        }
    }
    survive.canonicalize();
    limit_survive.canonicalize();
    point.density_n = BigRational(1) - survive;
    point.limit_value = BigRational(1) - limit_survive;
    if (fits) point.modulus = modulus;
    return point;
}

BigRational five_power_s_density(std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("five_power_s_density: k must be >= 1");
    return BigRational(1) - n_density_prime_power(5, k);
}

}  // namespace twosq::density
