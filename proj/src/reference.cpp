#include "twosq/reference.hpp"

#include <stdexcept>

#include "twosq/residues.hpp"

namespace twosq::search {

namespace {

using u64 = std::uint64_t;

struct DirectChecker {
    u64 n;
    std::uint32_t k;
    u64 odd_part;
    arith::Factorization full;    // factorization of n = 2^k * m
    std::vector<u64> pow2_mod_n;  // 2^j mod n for j = 0..jmax
    u64 jmax;                     // upper j of condition 3

    DirectChecker(const CandidateModulus& c, Mode mode)
        : n(c.n), k(c.k), odd_part(c.odd_part) {
        full.value = c.n;
        full.factors.push_back({2, c.k});
        for (const auto& pp : c.odd_factors.factors) full.factors.push_back(pp);

        jmax = c.k - 1;
        if (mode == Mode::TwoPowers && c.odd_part >= 3)
            jmax = arith::multiplicative_order(2, c.odd_part).order;
        pow2_mod_n.resize(std::max<u64>(jmax, c.k - 1) + 1);
        u64 cur = 1 % n;
        for (u64 j = 0; j < pow2_mod_n.size(); ++j) {
            pow2_mod_n[j] = cur;
            cur = cur * 2 % n;
        }
    }

    bool in_n_set(u64 y) const { return !residues::member(n, y, full).in_s; }

    bool accepts(Mode mode, u64 x) const {
        // Condition 1: x mod 2^k lies in N_{2^k}.
        if (residues::member_2k(k, x & ((1ull << k) - 1))) return false;
        // Condition 2: x - 2^i in N_n for i = 0..k-1.
        for (std::uint32_t i = 0; i < k; ++i)
            if (!in_n_set((x + n - pow2_mod_n[i]) % n)) return false;
        if (mode == Mode::OnePower) return true;
        // Condition 3: x - 2^i - 2^j in N_n for i = 0..k-1 and
        // j = i+1..ord_m(2); j runs to k-1 instead when m = 1.
        for (std::uint32_t i = 0; i < k; ++i) {
            for (u64 j = i + 1; j <= jmax; ++j) {
                u64 y = (x + n - pow2_mod_n[i]) % n;
                y = (y + n - pow2_mod_n[j]) % n;
                if (!in_n_set(y)) return false;
            }
        }
        return true;
    }
};

}  // namespace

bool in_condition_set_direct(const CandidateModulus& c, Mode mode, std::uint64_t x) {
    if (x >= c.n) throw std::invalid_argument("residue out of range");
    return DirectChecker(c, mode).accepts(mode, x);
}

ConditionSet condition_set_reference(const CandidateModulus& c, Mode mode) {
    DirectChecker checker(c, mode);
    ConditionSet set;
    set.candidate = c;
    set.mode = mode;
    set.member_words.assign((c.n + 63) / 64, 0);
    for (u64 x = 0; x < c.n; ++x) {
        if (checker.accepts(mode, x)) {
            set.member_words[x >> 6] |= 1ull << (x & 63);
            ++set.count;
        }
    }
    set.density = make_rational(set.count, c.n);
    return set;
}

}  // namespace twosq::search
