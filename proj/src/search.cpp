#include "twosq/search.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "twosq/oracle.hpp"
#include "twosq/reference.hpp"
#include "twosq/residues.hpp"

namespace twosq::search {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;

constexpr std::size_t kMaxFactors = 8;  // 8 distinct square-full primes already exceed 2^64

void set_bit(u64* words, u64 x) { words[x >> 6] |= 1ull << (x & 63); }

// Residue tables shared by every candidate 2^k * m with the same odd part.
struct GroupTables {
    u64 m = 1;
    std::vector<u64> q;                          // odd prime powers dividing m
    std::vector<std::vector<std::uint8_t>> s_tab;  // S_q membership per factor
    std::vector<std::vector<u32>> pw;            // pw[f][j] = 2^j mod q_f
    std::vector<std::uint8_t> two_s;             // S membership of x mod 2^k, any k <= max_k
    u64 ord = 0;                                 // ord_m(2) when needed (m >= 3)
};

// x < 2^k lies in S_{2^k} iff x = 0 or its odd part is 1 mod 4; the test is
// independent of k, so one table serves every k in a group.
std::vector<std::uint8_t> build_two_s(u64 size) {
    std::vector<std::uint8_t> tab(size, 1);
    for (u64 x = 3; x < size; x += 2) tab[x] = (x & 3) == 1;
    for (u64 x = 2; x < size; x += 2) tab[x] = tab[x >> 1];
    return tab;
}

// S_{p^a} membership for odd p: x = 0 or p-adic valuation of x even.
std::vector<std::uint8_t> build_odd_s(u64 p, u32 a) {
    u64 q = arith::checked_pow(p, a);
    std::vector<std::uint8_t> tab(q, 1);
    if (p % 4 == 1) return tab;
    // Mark x = t * p^v for odd v and p not dividing t; each x has a unique
    // valuation, so nothing is marked twice.
    for (u64 step = p; step < q; step *= p * p) {
        u64 tp = 1;  // t mod p; t divisible by p belongs to a higher valuation
        for (u64 x = step; x < q; x += step) {
            if (tp != 0) tab[x] = 0;
            if (++tp == p) tp = 0;
        }
    }
    return tab;
}

GroupTables build_group_tables(const arith::Factorization& odd_factors, u32 max_k, Mode mode,
                               u64 jmax_hint) {
    GroupTables g;
    g.m = odd_factors.value;
    if (odd_factors.factors.size() > kMaxFactors)
        throw std::invalid_argument("candidate has too many odd prime factors");
    g.two_s = build_two_s(1ull << max_k);

    u64 jmax = max_k > 0 ? max_k - 1 : 0;
    if (mode == Mode::TwoPowers && g.m >= 3) {
        g.ord = arith::multiplicative_order(2, g.m).order;
        jmax = std::max<u64>(jmax, std::max(g.ord, jmax_hint));
    }
    for (const auto& pp : odd_factors.factors) {
        u64 q = arith::checked_pow(pp.prime, pp.exponent);
        if (q > 0xffffffffull) throw std::invalid_argument("candidate factor exceeds table range");
        g.q.push_back(q);
        g.s_tab.push_back(build_odd_s(pp.prime, pp.exponent));
        std::vector<u32> pw(jmax + 1);
        u64 cur = 1 % q;
        for (u64 j = 0; j <= jmax; ++j) {
            pw[j] = static_cast<u32>(cur);
            cur = cur * 2 % q;
        }
        g.pw.push_back(std::move(pw));
    }
    return g;
}

// Walks x = r + t*2^k over r in [r0, r1), t in [t0, t1) and counts the x
// accepted by the mode's conditions. Residues mod each odd factor advance
// incrementally (stride 2^k mod q); the 2-part is pure mask arithmetic.
// When bits != nullptr accepted x are recorded; callers keep tiles
// word-disjoint so no synchronization is needed here.
u64 scan_tiles(const GroupTables& g, u32 k, Mode mode, u64 jmax, u64 r0, u64 r1, u64 t0, u64 t1,
               u64* bits) {
    const u64 mask = (1ull << k) - 1;
    const std::size_t nf = g.q.size();
    const std::uint8_t* two_s = g.two_s.data();

    u32 qv[kMaxFactors];
    u32 step[kMaxFactors];
    const std::uint8_t* tab[kMaxFactors];
    const u32* pw[kMaxFactors];
    for (std::size_t f = 0; f < nf; ++f) {
        qv[f] = static_cast<u32>(g.q[f]);
        step[f] = static_cast<u32>((1ull << k) % g.q[f]);
        tab[f] = g.s_tab[f].data();
        pw[f] = g.pw[f].data();
    }

    u64 count = 0;
    for (u64 r = r0; r < r1; ++r) {
        if (two_s[r]) continue;  // condition 1: x mod 2^k must lie in N_{2^k}

        // Only the i whose 2-component of x - 2^i stays in S need odd-part
        // checks; for the rest x - 2^i is in N_n outright.
        u32 ilist[64];
        u32 ilen = 0;
        for (u32 i = 0; i < k; ++i)
            if (two_s[(r - (1ull << i)) & mask]) ilist[ilen++] = i;

        if (ilen == 0 && mode == Mode::OnePower) {
            // Condition 2 holds for the whole residue class.
            count += t1 - t0;
            if (bits)
                for (u64 t = t0; t < t1; ++t) set_bit(bits, r + (t << k));
            continue;
        }
        if (ilen != 0 && nf == 0) continue;  // m = 1 leaves no odd part to rescue x - 2^i

        u32 rq[kMaxFactors];
        for (std::size_t f = 0; f < nf; ++f)
            rq[f] = static_cast<u32>(((r % qv[f]) + (t0 % qv[f]) * static_cast<u64>(step[f])) % qv[f]);

        for (u64 t = t0; t < t1; ++t) {
            bool pass = true;
            for (u32 ii = 0; ii < ilen && pass; ++ii) {
                const u32 i = ilist[ii];
                bool in_n = false;
                for (std::size_t f = 0; f < nf; ++f) {
                    std::int64_t v = static_cast<std::int64_t>(rq[f]) - pw[f][i];
                    if (v < 0) v += qv[f];
                    if (!tab[f][v]) {
                        in_n = true;
                        break;
                    }
                }
                pass = in_n;
            }
            if (pass && mode == Mode::TwoPowers) {
                for (u32 i = 0; i < k && pass; ++i) {
                    for (u64 j = i + 1; j <= jmax; ++j) {
                        const u64 y2 = (r - (1ull << i) - (j < k ? (1ull << j) : 0)) & mask;
                        if (!two_s[y2]) continue;
                        bool in_n = false;
                        for (std::size_t f = 0; f < nf; ++f) {
                            std::int64_t v =
                                static_cast<std::int64_t>(rq[f]) - pw[f][i] - pw[f][j];
                            if (v < 0) v += qv[f];
                            if (v < 0) v += qv[f];
                            if (!tab[f][v]) {
                                in_n = true;
                                break;
                            }
                        }
                        if (!in_n) {
                            pass = false;
                            break;
                        }
                    }
                }
            }
            if (pass) {
                ++count;
                if (bits) set_bit(bits, r + (t << k));
            }
            for (std::size_t f = 0; f < nf; ++f) {
                rq[f] += step[f];
                if (rq[f] >= qv[f]) rq[f] -= qv[f];
            }
        }
    }
    return count;
}

u64 candidate_jmax(const GroupTables& g, const CandidateModulus& c, Mode mode) {
    if (mode == Mode::OnePower) return 0;
    return c.odd_part == 1 ? c.k - 1 : g.ord;
}

u64 count_candidate(const GroupTables& g, const CandidateModulus& c, Mode mode) {
    return scan_tiles(g, c.k, mode, candidate_jmax(g, c, mode), 0, 1ull << c.k, 0, c.odd_part,
                      nullptr);
}

ConditionSet finish_condition_set(const CandidateModulus& c, Mode mode,
                                  std::vector<u64>&& words, u64 count) {
    ConditionSet set;
    set.candidate = c;
    set.mode = mode;
    set.member_words = std::move(words);
    set.count = count;
    set.density = make_rational(count, c.n);
    return set;
}

// density(a) > density(b), ties by smaller n. n is unique per candidate so
// the order is total and any reduction order yields the same maximum.
bool better_result(const CandidateResult& a, const CandidateResult& b) {
    u128 lhs = static_cast<u128>(a.count) * b.n;
    u128 rhs = static_cast<u128>(b.count) * a.n;
    if (lhs != rhs) return lhs > rhs;
    return a.n < b.n;
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::OnePower ? "one-power" : "two-powers"; }

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "one-power") return Mode::OnePower;
    if (text == "two-powers") return Mode::TwoPowers;
    return std::nullopt;
}

CandidateModulus make_candidate(std::uint32_t k, std::uint64_t odd_part) {
    if (k < 2 || k > 62) throw std::invalid_argument("candidate k must be in [2, 62]");
    if (odd_part == 0 || odd_part % 2 == 0)
        throw std::invalid_argument("candidate odd part must be odd and positive");
    CandidateModulus c;
    c.k = k;
    c.odd_part = odd_part;
    c.n = arith::checked_mul(1ull << k, odd_part);
    c.odd_factors = arith::factorize(odd_part);
    for (const auto& pp : c.odd_factors.factors) {
        if (pp.prime % 4 != 3)
            throw std::invalid_argument("candidate odd part must use primes = 3 mod 4 only");
        if (pp.exponent < 2)
            throw std::invalid_argument("candidate odd part must be square-full");
    }
    return c;
}

std::vector<CandidateModulus> candidates(std::uint64_t limit) {
    if (limit < 4) throw std::invalid_argument("candidates: limit must be >= 4");
    const u64 odd_bound = limit >> 2;

    std::vector<u32> primes;
    for (u32 p : arith::primes_up_to(static_cast<u32>(arith::isqrt(odd_bound))))
        if (p % 4 == 3) primes.push_back(p);

    // Odd square-full products of primes = 3 mod 4, depth-first with the
    // factorization carried along the path.
    std::vector<std::pair<u64, arith::Factorization>> odd_parts;
    arith::Factorization path;
    path.value = 1;
    auto emit = [&](u64 value) {
        path.value = value;
        odd_parts.emplace_back(value, path);
    };
    auto rec = [&](auto&& self, std::size_t idx, u64 cur) -> void {
        emit(cur);
        for (std::size_t j = idx; j < primes.size(); ++j) {
            const u64 p = primes[j];
            if (p * p > odd_bound / cur) break;
            u64 value = cur * p * p;
            u32 exp = 2;
            while (true) {
                path.factors.push_back({p, exp});
                self(self, j + 1, value);
                path.factors.pop_back();
                if (value > odd_bound / p) break;
                value *= p;
                ++exp;
            }
        }
    };
    rec(rec, 0, 1);

    std::vector<CandidateModulus> result;
    for (auto& [m, factors] : odd_parts) {
        for (u32 k = 2; k <= 62 && (limit >> k) >= m; ++k) {
            CandidateModulus c;
            c.k = k;
            c.odd_part = m;
            c.n = m << k;
            c.odd_factors = factors;
            result.push_back(std::move(c));
        }
    }
    std::sort(result.begin(), result.end(),
              [](const CandidateModulus& a, const CandidateModulus& b) { return a.n < b.n; });
    return result;
}

std::vector<std::uint64_t> ConditionSet::members() const {
    std::vector<u64> out;
    out.reserve(count);
    for (u64 x = 0; x < candidate.n; ++x)
        if (contains(x)) out.push_back(x);
    return out;
}

std::uint64_t condition_count(const CandidateModulus& c, Mode mode) {
    GroupTables g = build_group_tables(c.odd_factors, c.k, mode, 0);
    return count_candidate(g, c, mode);
}

ConditionSet condition_set(const CandidateModulus& c, Mode mode, int threads) {
    GroupTables g = build_group_tables(c.odd_factors, c.k, mode, 0);
    const u64 jmax = candidate_jmax(g, c, mode);
    std::vector<u64> words((c.n + 63) / 64, 0);
    const int T = threads > 0 ? threads : omp_get_max_threads();

    u64 total = 0;
    if (c.n < (1u << 16) || T == 1) {
        total = scan_tiles(g, c.k, mode, jmax, 0, 1ull << c.k, 0, c.odd_part, words.data());
    } else if (c.k >= 6) {
        // Tiles split the residue classes; 64-aligned r ranges keep every
        // tile's bits in separate words (x mod 2^k determines x mod 64).
        const u64 classes = 1ull << c.k;
        const u64 chunk = std::max<u64>(64, ((classes / (4 * T)) + 63) & ~63ull);
#pragma omp parallel for schedule(dynamic) reduction(+ : total) num_threads(T)
        for (u64 r0 = 0; r0 < classes; r0 += chunk)
            total += scan_tiles(g, c.k, mode, jmax, r0, std::min(classes, r0 + chunk), 0,
                                c.odd_part, words.data());
    } else {
        // Few residue classes: split t instead. Tile boundaries are kept at
        // multiples of 2^(6-k) so bit ranges stay word-disjoint.
        const u64 align = 1ull << (6 - c.k);
        const u64 chunk = std::max<u64>(align, ((c.odd_part / (4 * T)) + align - 1) & ~(align - 1));
#pragma omp parallel for schedule(dynamic) reduction(+ : total) num_threads(T)
        for (u64 t0 = 0; t0 < c.odd_part; t0 += chunk)
            total += scan_tiles(g, c.k, mode, jmax, 0, 1ull << c.k, t0,
                                std::min(c.odd_part, t0 + chunk), words.data());
    }
    return finish_condition_set(c, mode, std::move(words), total);
}

ConditionSet condition_set_one_power(const CandidateModulus& c, int threads) {
    return condition_set(c, Mode::OnePower, threads);
}

ConditionSet condition_set_two_powers(const CandidateModulus& c, int threads) {
    return condition_set(c, Mode::TwoPowers, threads);
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint file: " + tmp);
        out << "format=twosq-search-checkpoint-v1\n";
        out << "mode=" << to_string(cp.mode) << "\n";
        out << "limit=" << cp.limit << "\n";
        out << "cursor=" << cp.cursor << "\n";
        out << "candidates_scanned=" << cp.candidates_scanned << "\n";
        if (cp.best) {
            out << "best_n=" << cp.best->n << "\n";
            out << "best_k=" << cp.best->k << "\n";
            out << "best_m=" << cp.best->odd_part << "\n";
            out << "best_count=" << cp.best->count << "\n";
        } else {
            out << "best=none\n";
        }
        if (!out.good()) throw std::runtime_error("checkpoint write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    if (kv["format"] != "twosq-search-checkpoint-v1")
        throw std::runtime_error("unrecognized checkpoint format in " + path);

    Checkpoint cp;
    auto mode = parse_mode(kv["mode"]);
    if (!mode) throw std::runtime_error("checkpoint has invalid mode: " + kv["mode"]);
    cp.mode = *mode;
    cp.limit = std::stoull(kv["limit"]);
    cp.cursor = std::stoull(kv["cursor"]);
    cp.candidates_scanned = std::stoull(kv["candidates_scanned"]);
    if (kv.count("best_n")) {
        CandidateResult best;
        best.n = std::stoull(kv["best_n"]);
        best.k = static_cast<u32>(std::stoul(kv["best_k"]));
        best.odd_part = std::stoull(kv["best_m"]);
        best.count = std::stoull(kv["best_count"]);
        cp.best = best;
    }
    return cp;
}

SearchReport search(std::uint64_t limit, Mode mode, const SearchOptions& options) {
    std::vector<CandidateModulus> cands = candidates(limit);

    Checkpoint cp;
    cp.mode = mode;
    cp.limit = limit;
    if (!options.checkpoint_path.empty()) {
        if (auto loaded = load_checkpoint(options.checkpoint_path)) {
            if (loaded->mode != mode || loaded->limit != limit)
                throw std::invalid_argument(
                    "checkpoint does not match the requested mode and limit");
            cp = *loaded;
        }
    }

    // Everything at or below the stored cursor is already done.
    std::size_t first_idx = 0;
    while (first_idx < cands.size() && cands[first_idx].n <= cp.cursor) ++first_idx;

    // One table set per odd part; k only changes the cheap 2-power side.
    std::map<u64, std::vector<std::size_t>> by_odd_part;
    for (std::size_t i = first_idx; i < cands.size(); ++i)
        by_odd_part[cands[i].odd_part].push_back(i);
    std::vector<std::vector<std::size_t>> groups;
    groups.reserve(by_odd_part.size());
    for (auto& [m, idxs] : by_odd_part) groups.push_back(std::move(idxs));

    std::vector<u64> counts(cands.size(), 0);
    std::vector<std::uint8_t> done(cands.size(), 0);
    for (std::size_t i = 0; i < first_idx; ++i) done[i] = 1;

    std::size_t watermark = first_idx;
    u64 scanned = cp.candidates_scanned;
    std::optional<CandidateResult> running_best = cp.best;
    const int T = options.threads > 0 ? options.threads : omp_get_max_threads();

    // Fail fast on an unwritable checkpoint location before scanning starts.
    if (!options.checkpoint_path.empty()) {
        Checkpoint initial = cp;
        initial.cursor = watermark > 0 ? cands[watermark - 1].n : cp.cursor;
        save_checkpoint(options.checkpoint_path, initial);
    }

    std::string io_error;  // exceptions cannot leave the parallel region

#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& group = groups[gi];
        u32 max_k = 0;
        for (std::size_t idx : group) max_k = std::max(max_k, cands[idx].k);
        GroupTables tables = build_group_tables(cands[group.front()].odd_factors, max_k, mode, 0);

        for (std::size_t idx : group) {
            const u64 cnt = count_candidate(tables, cands[idx], mode);
#pragma omp critical(twosq_search_progress)
            {
                counts[idx] = cnt;
                done[idx] = 1;
                ++scanned;
                while (watermark < cands.size() && done[watermark]) ++watermark;
                CandidateResult result{cands[idx].n, cands[idx].k, cands[idx].odd_part, cnt};
                if (cnt > 0 && (!running_best || better_result(result, *running_best)))
                    running_best = result;
                if (!options.checkpoint_path.empty() && io_error.empty()) {
                    Checkpoint snapshot;
                    snapshot.mode = mode;
                    snapshot.limit = limit;
                    snapshot.cursor = watermark > 0 ? cands[watermark - 1].n : cp.cursor;
                    snapshot.candidates_scanned = scanned;
                    snapshot.best = running_best;
                    try {
                        save_checkpoint(options.checkpoint_path, snapshot);
                    } catch (const std::exception& e) {
                        io_error = e.what();
                    }
                }
                if (options.progress)
                    std::fprintf(stderr, "scanned n=%llu (k=%u m=%llu) |A|=%llu [%llu/%zu]\n",
                                 static_cast<unsigned long long>(cands[idx].n), cands[idx].k,
                                 static_cast<unsigned long long>(cands[idx].odd_part),
                                 static_cast<unsigned long long>(cnt),
                                 static_cast<unsigned long long>(scanned), cands.size());
            }
        }
    }
    if (!io_error.empty()) throw std::runtime_error("checkpoint write failed: " + io_error);

    SearchReport report;
    report.limit = limit;
    report.mode = mode;
    report.candidates_scanned = scanned;
    report.cursor = cands.empty() ? cp.cursor : cands.back().n;

    std::optional<CandidateResult> best = cp.best;
    for (std::size_t i = first_idx; i < cands.size(); ++i) {
        CandidateResult result{cands[i].n, cands[i].k, cands[i].odd_part, counts[i]};
        report.results.push_back(result);
        if (result.count > 0 && (!best || better_result(result, *best))) best = result;
    }
    if (best) {
        BestCandidate b;
        b.candidate = make_candidate(best->k, best->odd_part);
        b.count = best->count;
        b.density = make_rational(best->count, best->n);
        report.best = b;
    }

    if (!options.checkpoint_path.empty()) {
        Checkpoint final_cp;
        final_cp.mode = mode;
        final_cp.limit = limit;
        final_cp.cursor = report.cursor;
        final_cp.candidates_scanned = scanned;
        final_cp.best = best;
        save_checkpoint(options.checkpoint_path, final_cp);
    }
    return report;
}

CertifyReport certify_lift(std::uint64_t x, const CandidateModulus& c, Mode mode,
                           std::uint64_t samples) {
    if (samples == 0) throw std::invalid_argument("certify_lift: samples must be >= 1");
    if (x >= c.n) throw std::invalid_argument("certify_lift: residue out of range");
    if (!in_condition_set_direct(c, mode, x))
        throw std::invalid_argument("certify_lift: residue is not in the condition set");

    CertifyReport report;
    report.residue = x;
    report.modulus = c.n;
    report.mode = mode;
    report.samples = samples;
    const u32 budget = mode == Mode::OnePower ? 1 : 2;
    for (u64 t = 0; t < samples; ++t) {
        u64 value = x + arith::checked_mul(t, c.n);
        if (oracle::nat_two_squares_plus_powers(value, budget))
            report.counterexamples.push_back(value);
    }
    return report;
}

}  // namespace twosq::search
