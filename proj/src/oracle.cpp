#include "twosq/oracle.hpp"

#include <bit>
#include <stdexcept>

#include "twosq/arithmetic.hpp"

namespace twosq::oracle {

namespace {
using u64 = std::uint64_t;
}

std::uint64_t ResidueSet::popcount() const {
    u64 total = 0;
    for (u64 w : words) total += std::popcount(w);
    return total;
}

ResidueSet enumerate_s(std::uint64_t n, std::uint64_t ceiling) {
    if (n == 0) throw std::invalid_argument("enumerate_s: modulus must be positive");
    if (n > ceiling) throw std::invalid_argument("enumerate_s: modulus above oracle ceiling");

    // a and n-a square to the same residue, so a <= n/2 covers every square.
    std::vector<std::uint64_t> square_words((n + 63) / 64, 0);
    for (u64 a = 0; a <= n / 2; ++a) {
        u64 sq = a * a % n;
        square_words[sq >> 6] |= 1ull << (sq & 63);
    }
    std::vector<std::uint32_t> squares;
    for (u64 x = 0; x < n; ++x)
        if ((square_words[x >> 6] >> (x & 63)) & 1u) squares.push_back(static_cast<std::uint32_t>(x));

    ResidueSet set;
    set.modulus = n;
    set.words.assign((n + 63) / 64, 0);
    for (std::size_t i = 0; i < squares.size(); ++i) {
        for (std::size_t j = i; j < squares.size(); ++j) {
            u64 sum = static_cast<u64>(squares[i]) + squares[j];
            if (sum >= n) sum -= n;
            set.words[sum >> 6] |= 1ull << (sum & 63);
        }
    }
    return set;
}

bool nat_is_two_squares(std::uint64_t m) {
    if (m <= 1) return true;
    for (const auto& pp : arith::factorize(m).factors)
        if (pp.prime % 4 == 3 && (pp.exponent & 1)) return false;
    return true;
}

bool nat_two_squares_plus_powers(std::uint64_t m, std::uint32_t max_powers) {
    if (max_powers > 2) throw std::invalid_argument("nat_two_squares_plus_powers: at most two powers");
    if (nat_is_two_squares(m)) return true;
    if (max_powers == 0) return false;

    std::vector<u64> powers;
    for (u64 p = 1; p <= m; p <<= 1) {
        powers.push_back(p);
        if (p > m / 2) break;
    }
    for (u64 p : powers)
        if (nat_is_two_squares(m - p)) return true;
    if (max_powers == 1) return false;

    // Two power terms, exponents may coincide (2^i + 2^i is allowed).
    for (std::size_t i = 0; i < powers.size(); ++i)
        for (std::size_t j = i; j < powers.size() && powers[j] <= m - powers[i]; ++j)
            if (nat_is_two_squares(m - powers[i] - powers[j])) return true;
    return false;
}

}  // namespace twosq::oracle
