#include "twosq/arithmetic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace twosq::arith {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Primes below 2^16 cover trial division for every value the search touches;
// the 6k+-1 fallback below keeps factorize correct for arbitrary 64-bit input.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = primes_up_to(1u << 16);
    return table;
}

}  // namespace

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    u64 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("checked_mul: product exceeds 64 bits");
    return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
    u64 out = 1;
    for (std::uint32_t i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    u64 result = 1;
    u64 cur = base % m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, cur, m);
        cur = mulmod(cur, cur, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Deterministic witness set for the full 64-bit range.
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

std::uint64_t isqrt(std::uint64_t n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.value = n;
    if (n == 1) return f;

    auto extract = [&](u64 p) {
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) f.factors.push_back({p, e});
        return e > 0;
    };

    if (is_prime(n)) {
        f.factors.push_back({n, 1});
        return f;
    }
    for (std::uint32_t p : small_primes()) {
        if (static_cast<u64>(p) * p > n) break;
        if (extract(p) && n > 1 && is_prime(n)) {
            f.factors.push_back({n, 1});
            return f;
        }
    }
    // Cofactor has no prime below 2^16; continue on the 6k+-1 wheel.
    for (u64 p = 65537; p * p <= n && n > 1; p += (p % 6 == 1) ? 4 : 2) {
        if (extract(p) && n > 1 && is_prime(n)) {
            f.factors.push_back({n, 1});
            return f;
        }
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

TwoAdicSplit two_adic_split(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("two_adic_split: n must be positive");
    TwoAdicSplit split;
    split.exponent = (n & 1) ? 0 : static_cast<std::uint32_t>(__builtin_ctzll(n));
    split.odd_part = n >> split.exponent;
    return split;
}

std::uint64_t totient(const Factorization& f) {
    u64 phi = 1;
    for (const auto& [p, e] : f.factors) {
        phi = checked_mul(phi, checked_pow(p, e - 1));
        phi = checked_mul(phi, p - 1);
    }
    return phi;
}

OrderValue multiplicative_order(std::uint64_t base, std::uint64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
    u64 b = base % modulus;
    if (std::gcd(b, modulus) != 1)
        throw std::invalid_argument("multiplicative_order: base and modulus must be coprime");

    u64 order = totient(factorize(modulus));
    for (const auto& [q, e] : factorize(order).factors) {
        for (std::uint32_t i = 0; i < e; ++i) {
            if (order % q == 0 && powmod(b, order / q, modulus) == 1)
                order /= q;
            else
                break;
        }
    }
    return {b, modulus, order};
}

Congruence crt_combine(std::span<const Congruence> parts) {
    if (parts.empty()) throw std::invalid_argument("crt_combine: empty congruence list");

    auto inv_mod = [](u64 a, u64 m) -> u64 {
        // Extended Euclid; caller guarantees gcd(a, m) = 1.
        __int128 t = 0, new_t = 1;
        __int128 r = m, new_r = a % m;
        while (new_r != 0) {
            __int128 q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (t < 0) t += m;
        return static_cast<u64>(t);
    };

    Congruence acc{0, 1};
    for (const Congruence& part : parts) {
        if (part.modulus == 0) throw std::invalid_argument("crt_combine: zero modulus");
        if (std::gcd(acc.modulus, part.modulus) != 1)
            throw std::invalid_argument("crt_combine: moduli are not pairwise coprime");
        u64 combined = checked_mul(acc.modulus, part.modulus);
        u64 r2 = part.residue % part.modulus;
        // x = acc.residue + acc.modulus * t with t solving the second congruence.
        u64 diff = (r2 + part.modulus - acc.residue % part.modulus) % part.modulus;
        u64 t = mulmod(diff, inv_mod(acc.modulus % part.modulus, part.modulus), part.modulus);
        acc.residue += acc.modulus * t;
        acc.modulus = combined;
    }
    return acc;
}

}  // namespace twosq::arith
