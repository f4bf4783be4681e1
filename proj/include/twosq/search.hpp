#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twosq/arithmetic.hpp"
#include "twosq/rational.hpp"

// Search engine over moduli n = 2^k * m (k >= 2, m odd and square-full with
// every prime factor = 3 mod 4). For each candidate it computes the set A of
// residues x certifying that naturals congruent to x mod n are not a sum of
// two squares plus up to one (or two) powers of 2:
//   (1) x mod 2^k in N_{2^k}
//   (2) x - 2^i in N_n            for i = 0..k-1
//   (3) x - 2^i - 2^j in N_n      for i = 0..k-1, j = i+1..ord_m(2)   (two-power mode)
// Candidate evaluations are pure and run in parallel; results are identical
// for any worker count.

namespace twosq::search {

enum class Mode { OnePower, TwoPowers };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

struct CandidateModulus {
    std::uint32_t k = 2;
    std::uint64_t odd_part = 1;          // m
    std::uint64_t n = 4;                 // 2^k * m
    arith::Factorization odd_factors;    // factorization of m
};

// Builds and validates a candidate from (k, m). Rejects k < 2, even m,
// non-square-full m and primes = 1 mod 4 in m.
CandidateModulus make_candidate(std::uint32_t k, std::uint64_t odd_part);

// Every admissible n <= limit in increasing order. Requires limit >= 4.
std::vector<CandidateModulus> candidates(std::uint64_t limit);

struct ConditionSet {
    CandidateModulus candidate;
    Mode mode = Mode::OnePower;
    std::vector<std::uint64_t> member_words;  // bit x set iff x in A
    std::uint64_t count = 0;
    Rational density{0, 1};

    bool contains(std::uint64_t x) const {
        return (member_words[x >> 6] >> (x & 63)) & 1u;
    }
    std::vector<std::uint64_t> members() const;
};

// Table-driven kernels (parallel when threads != 1). threads = 0 uses the
// OpenMP default.
ConditionSet condition_set_one_power(const CandidateModulus& c, int threads = 0);
ConditionSet condition_set_two_powers(const CandidateModulus& c, int threads = 0);
ConditionSet condition_set(const CandidateModulus& c, Mode mode, int threads = 0);

// |A| without materializing the bitset; single-threaded. The search driver
// calls this once per candidate.
std::uint64_t condition_count(const CandidateModulus& c, Mode mode);

struct BestCandidate {
    CandidateModulus candidate;
    std::uint64_t count = 0;
    Rational density{0, 1};
};

struct CandidateResult {
    std::uint64_t n = 0;
    std::uint32_t k = 0;
    std::uint64_t odd_part = 0;
    std::uint64_t count = 0;
};

struct SearchReport {
    std::uint64_t limit = 0;
    Mode mode = Mode::OnePower;
    std::optional<BestCandidate> best;  // absent when every condition set is empty
    std::uint64_t candidates_scanned = 0;
    std::uint64_t cursor = 0;           // last n examined; resume point
    // Per-candidate counts evaluated in this session, in increasing n.
    std::vector<CandidateResult> results;
};

struct Checkpoint {
    Mode mode = Mode::OnePower;
    std::uint64_t limit = 0;
    std::uint64_t cursor = 0;               // all candidates <= cursor are done
    std::uint64_t candidates_scanned = 0;
    std::optional<CandidateResult> best;
};

// Single self-describing key=value record; written via temp file + rename.
void save_checkpoint(const std::string& path, const Checkpoint& cp);
std::optional<Checkpoint> load_checkpoint(const std::string& path);

struct SearchOptions {
    int threads = 0;               // 0 = OpenMP default
    std::string checkpoint_path;   // loaded if present, rewritten as work completes
    bool progress = false;         // progress lines on stderr
};

// Scans candidates(limit), maximizing |A|/n with ties broken by smaller n.
// Deterministic for any thread count. With a checkpoint path the scan
// resumes past the stored cursor and keeps the stored best.
SearchReport search(std::uint64_t limit, Mode mode, const SearchOptions& options = {});

struct CertifyReport {
    std::uint64_t residue = 0;
    std::uint64_t modulus = 0;
    Mode mode = Mode::OnePower;
    std::uint64_t samples = 0;
    std::vector<std::uint64_t> counterexamples;  // lifts the oracle could represent

    bool ok() const { return counterexamples.empty(); }
};

// Checks via the natural-number oracle that x + t*n stays non-representable
// for t = 0..samples-1. Rejects x outside the condition set.
CertifyReport certify_lift(std::uint64_t x, const CandidateModulus& c, Mode mode,
                           std::uint64_t samples);

}  // namespace twosq::search
