// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit when
// anything fails. Run through ctest (test name "acceptance") or directly.

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twosq/arithmetic.hpp"
#include "twosq/density.hpp"
#include "twosq/oracle.hpp"
#include "twosq/rational.hpp"
#include "twosq/residues.hpp"
#include "twosq/search.hpp"

using namespace twosq;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %02d [%s] %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

// 1. The full scan up to 10^7 lands exactly on n = 6830208 with |A| = 828139.
void criterion_headline() {
    auto result = search::search(10000000, search::Mode::OnePower);
    bool pass = result.best.has_value();
    std::string detail;
    if (pass) {
        const auto& best = *result.best;
        pass = best.candidate.n == 6830208 && best.candidate.k == 7 &&
               best.candidate.odd_part == 53361 && best.count == 828139 &&
               best.density == make_rational(828139, 6830208);
        detail = "search limit 1e7: best n=" + std::to_string(best.candidate.n) +
                 " k=" + std::to_string(best.candidate.k) +
                 " m=" + std::to_string(best.candidate.odd_part) +
                 " |A|=" + std::to_string(best.count) +
                 " density=" + to_string(best.density) + " (" + to_decimal6(best.density) + ")";
    } else {
        detail = "search limit 1e7 returned no candidate";
    }
    report(1, pass, detail);
}

// 2. member() equals the brute-force oracle for every x and every n <= 2048.
void criterion_oracle_equivalence() {
    bool pass = true;
    u64 bad_n = 0;
#pragma omp parallel for schedule(dynamic)
    for (u64 n = 1; n <= 2048; ++n) {
        bool ok;
#pragma omp atomic read
        ok = pass;
        if (!ok) continue;
        auto set = oracle::enumerate_s(n);
        auto f = arith::factorize(n);
        for (u64 x = 0; x < n; ++x) {
            if (residues::member(n, x, f).in_s != set.contains(x)) {
#pragma omp critical
                {
                    pass = false;
                    bad_n = n;
                }
                break;
            }
        }
    }
    report(2, pass,
           pass ? "member(n, x) == oracle for all n <= 2048, all x"
                : "first disagreement at n=" + std::to_string(bad_n));
}

// 3. Prime-power counting formulas against oracle popcounts, both parity
// branches per prime. Oracle enumeration is quadratic, so the sweep covers
// every (p, k <= 6) with p^k <= 2e5 (k <= 6 in full for p = 3 and 7).
void criterion_counting_formulas() {
    struct Item {
        u64 p;
        std::uint32_t k;
    };
    std::vector<Item> items;
    for (u64 p : {3, 7, 11, 19, 23})
        for (std::uint32_t k = 1; k <= 6; ++k)
            if (arith::checked_pow(p, k) <= 200000) items.push_back({p, k});
    for (std::uint32_t k = 1; k <= 12; ++k) items.push_back({2, k});

    bool pass = true;
    std::string bad;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < items.size(); ++i) {
        u64 q = arith::checked_pow(items[i].p, items[i].k);
        u64 expect = residues::count_prime_power(items[i].p, items[i].k).count_s;
        u64 got = oracle::enumerate_s(q).popcount();
        if (expect != got) {
#pragma omp critical
            {
                pass = false;
                bad = "p=" + std::to_string(items[i].p) + " k=" + std::to_string(items[i].k);
            }
        }
    }
    // Even/odd coverage check on the sweep itself.
    for (u64 p : {3, 7, 11, 19, 23}) {
        bool even = false, odd = false;
        for (const Item& item : items)
            if (item.p == p) ((item.k % 2 == 0) ? even : odd) = true;
        if (!(even && odd)) {
            pass = false;
            bad = "parity coverage missing for p=" + std::to_string(p);
        }
    }
    report(3, pass,
           pass ? "count_prime_power == oracle popcount for " + std::to_string(items.size()) +
                      " prime powers (p in {2,3,7,11,19,23}, both parities)"
                : "mismatch at " + bad);
}

// 4. |S_mn| = |S_m| |S_n| and the inclusion-exclusion |N_mn| identity over 500
// random coprime pairs; 20 of them re-checked against the oracle.
void criterion_multiplicativity() {
    std::mt19937_64 rng(20240815);
    std::vector<std::pair<u64, u64>> pairs;
    while (pairs.size() < 500) {
        u64 a = rng() % 3000 + 2;
        u64 b = rng() % 3000 + 2;
        if (a * b > 100000 || std::gcd(a, b) != 1) continue;
        pairs.emplace_back(a, b);
    }
    bool pass = true;
    std::string bad;
    for (auto [a, b] : pairs) {
        auto ca = residues::count(a);
        auto cb = residues::count(b);
        auto cab = residues::count(a * b);
        bool ok = cab.count_s == ca.count_s * cb.count_s &&
                  cab.count_n == b * ca.count_n + a * cb.count_n - ca.count_n * cb.count_n;
        if (!ok) {
            pass = false;
            bad = "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
            break;
        }
    }

    std::vector<std::pair<u64, u64>> spot;
    for (auto [a, b] : pairs)
        if (a * b <= 30000 && spot.size() < 20) spot.emplace_back(a, b);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < spot.size(); ++i) {
        auto [a, b] = spot[i];
        u64 oracle_s = oracle::enumerate_s(a * b).popcount();
        if (residues::count(a * b).count_s != oracle_s) {
#pragma omp critical
            {
                pass = false;
                bad = "oracle spot-check (" + std::to_string(a) + ", " + std::to_string(b) + ")";
            }
        }
    }
    report(4, pass,
           pass ? "multiplicativity holds for 500 coprime pairs (20 oracle spot-checks)"
                : "failed at " + bad);
}

// 5. is_full_coverage(n) iff the oracle finds N_n empty, for every n <= 4096.
void criterion_full_coverage() {
    bool pass = true;
    u64 bad_n = 0;
#pragma omp parallel for schedule(dynamic)
    for (u64 n = 1; n <= 4096; ++n) {
        bool ok;
#pragma omp atomic read
        ok = pass;
        if (!ok) continue;
        bool oracle_full = oracle::enumerate_s(n).popcount() == n;
        if (residues::is_full_coverage(arith::factorize(n)) != oracle_full) {
#pragma omp critical
            {
                pass = false;
                bad_n = n;
            }
        }
    }
    report(5, pass,
           pass ? "is_full_coverage == (oracle N_n empty) for all n <= 4096"
                : "disagreement at n=" + std::to_string(bad_n));
}

// 6. The 23 mod 72 class: membership, 1000 certified lifts, density >= 1/72.
void criterion_platt_trudgian_class() {
    auto candidate = search::make_candidate(3, 9);
    auto set = search::condition_set_one_power(candidate);
    bool pass = set.contains(23);
    auto lift = search::certify_lift(23, candidate, search::Mode::OnePower, 1000);
    pass = pass && lift.ok();
    pass = pass && !rational_less(set.density, make_rational(1, 72));
    report(6, pass,
           "23 in A(72): " + std::string(set.contains(23) ? "yes" : "NO") +
               ", non-representable lifts " +
               std::to_string(1000 - lift.counterexamples.size()) + "/1000, density " +
               to_string(set.density) + " >= 1/72");
}

// 7. Two-power condition sets are empty for every candidate n <= 1e5.
void criterion_two_power_emptiness() {
    auto cands = search::candidates(100000);
    bool pass = true;
    u64 bad_n = 0, bad_count = 0;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < cands.size(); ++i) {
        u64 cnt = search::condition_count(cands[i], search::Mode::TwoPowers);
        if (cnt != 0) {
#pragma omp critical
            {
                pass = false;
                bad_n = cands[i].n;
                bad_count = cnt;
            }
        }
    }
    report(7, pass,
           pass ? "two-power condition sets empty for all " + std::to_string(cands.size()) +
                      " candidates n <= 1e5"
                : "nonempty set at n=" + std::to_string(bad_n) + " (|A|=" +
                      std::to_string(bad_count) + ")");
}

// 8. Exactly one m <= 535903 resists two squares plus up to two powers of 2.
void criterion_smallest_exception() {
    std::vector<u64> hits;
#pragma omp parallel
    {
        std::vector<u64> local;
#pragma omp for schedule(dynamic, 4096) nowait
        for (u64 m = 0; m <= 535903; ++m)
            if (!oracle::nat_two_squares_plus_powers(m, 2)) local.push_back(m);
#pragma omp critical
        hits.insert(hits.end(), local.begin(), local.end());
    }
    std::sort(hits.begin(), hits.end());
    bool pass = hits.size() == 1 && hits.front() == 535903;
    std::string detail = "sweep m <= 535903 found " + std::to_string(hits.size()) +
                         " non-representable value(s)";
    if (!hits.empty()) detail += ", first=" + std::to_string(hits.front());
    report(8, pass, detail);
}

// 9. Density sequence points: oracle agreement at desk scale, strict growth in
// s bounded by the limit, and r(S_{5^k}) = 1.
void criterion_asymptotics() {
    bool pass = true;
    std::string bad;
    for (auto [i, s] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}, {1, 8}, {1, 9}, {1, 10},
             {2, 2}, {2, 3}, {3, 2}}) {
        auto point = density::density_point(i, s);
        if (!point.modulus || *point.modulus > 100000) {
            pass = false;
            bad = "modulus unexpectedly large";
            break;
        }
        u64 n = *point.modulus;
        u64 count_n = n - oracle::enumerate_s(n).popcount();
        if (point.density_n != density::BigRational(count_n, n)) {
            pass = false;
            bad = "oracle mismatch at i=" + std::to_string(i) + " s=" + std::to_string(s);
            break;
        }
    }
    for (std::uint32_t i = 1; i <= 4 && pass; ++i) {
        density::BigRational prev(-1);
        for (std::uint32_t s = 2; s <= 8; ++s) {
            auto point = density::density_point(i, s);
            if (!(point.density_n > prev) || !(point.density_n < point.limit_value)) {
                pass = false;
                bad = "monotonicity at i=" + std::to_string(i) + " s=" + std::to_string(s);
                break;
            }
            prev = point.density_n;
        }
    }
    for (std::uint32_t k = 1; k <= 10 && pass; ++k) {
        if (density::five_power_s_density(k) != density::BigRational(1)) {
            pass = false;
            bad = "r(S_5^" + std::to_string(k) + ") != 1";
        }
    }
    report(9, pass,
           pass ? "density points match oracle, grow strictly in s below the limit, r(S_5^k)=1"
                : bad);
}

std::string serialize_report(const search::SearchReport& report) {
    std::ostringstream out;
    out << "mode=" << search::to_string(report.mode) << "\nlimit=" << report.limit
        << "\nscanned=" << report.candidates_scanned << "\ncursor=" << report.cursor << "\n";
    if (report.best)
        out << "best=" << report.best->candidate.n << "," << report.best->candidate.k << ","
            << report.best->candidate.odd_part << "," << report.best->count << "\n";
    else
        out << "best=none\n";
    for (const auto& row : report.results)
        out << row.n << "," << row.k << "," << row.odd_part << "," << row.count << "\n";
    return out.str();
}

// 10. Byte-identical search output at limit 1e5 for 1, 4, and 8 threads.
void criterion_determinism() {
    bool pass = true;
    std::string detail = "search limit 1e5 identical for 1/4/8 threads";
    for (search::Mode mode : {search::Mode::OnePower, search::Mode::TwoPowers}) {
        search::SearchOptions one;
        one.threads = 1;
        std::string base = serialize_report(search::search(100000, mode, one));
        for (int threads : {4, 8}) {
            search::SearchOptions opt;
            opt.threads = threads;
            if (serialize_report(search::search(100000, mode, opt)) != base) {
                pass = false;
                detail = "mismatch with " + std::to_string(threads) + " threads, mode " +
                         search::to_string(mode);
            }
        }
    }
    report(10, pass, detail);
}

}  // namespace

int main() {
    criterion_headline();
    criterion_oracle_equivalence();
    criterion_counting_formulas();
    criterion_multiplicativity();
    criterion_full_coverage();
    criterion_platt_trudgian_class();
    criterion_two_power_emptiness();
    criterion_smallest_exception();
    criterion_asymptotics();
    criterion_determinism();

    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
