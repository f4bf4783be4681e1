// Times the serial reference evaluator against the table-driven kernel for a
// chosen candidate, at 1..max threads. Usage: twosq_bench [k] [m] [mode]
// (defaults: the 2^7 * 53361 headline modulus, one-power).

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "twosq/reference.hpp"
#include "twosq/search.hpp"

namespace {

double seconds(auto fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint32_t k = 7;
    std::uint64_t m = 53361;
    twosq::search::Mode mode = twosq::search::Mode::OnePower;
    if (argc > 1) k = static_cast<std::uint32_t>(std::strtoul(argv[1], nullptr, 10));
    if (argc > 2) m = std::strtoull(argv[2], nullptr, 10);
    if (argc > 3) {
        auto parsed = twosq::search::parse_mode(argv[3]);
        if (!parsed) {
            std::fprintf(stderr, "unknown mode %s\n", argv[3]);
            return 2;
        }
        mode = *parsed;
    }

    auto candidate = twosq::search::make_candidate(k, m);
    std::printf("candidate n=%llu (k=%u, m=%llu), mode=%s\n",
                static_cast<unsigned long long>(candidate.n), k,
                static_cast<unsigned long long>(m), twosq::search::to_string(mode).c_str());

    std::uint64_t ref_count = 0;
    double ref_time = seconds([&] {
        ref_count = twosq::search::condition_set_reference(candidate, mode).count;
    });
    std::printf("%-22s %10.3fs  |A|=%llu\n", "reference (serial)", ref_time,
                static_cast<unsigned long long>(ref_count));

    for (int threads = 1; threads <= omp_get_max_threads(); threads *= 2) {
        std::uint64_t count = 0;
        double t = seconds([&] {
            count = twosq::search::condition_set(candidate, mode, threads).count;
        });
        std::printf("kernel (%d thread%s)     %10.3fs  |A|=%llu  speedup=%.1fx\n", threads,
                    threads == 1 ? ") " : "s)", t, static_cast<unsigned long long>(count),
                    ref_time / t);
        if (count != ref_count) {
            std::fprintf(stderr, "MISMATCH: kernel=%llu reference=%llu\n",
                         static_cast<unsigned long long>(count),
                         static_cast<unsigned long long>(ref_count));
            return 1;
        }
    }
    return 0;
}
