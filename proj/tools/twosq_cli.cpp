// Command-line front end: classification queries, counting tables, oracle
// cross-checks, density CSV emission, and the modulus search.
//
// Output is line-oriented key=value (default) or CSV so results diff cleanly.
// Every density appears both as an exact fraction and as a 6-place decimal.
// Search progress goes to stderr; results go to stdout.

#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "twosq/arithmetic.hpp"
#include "twosq/density.hpp"
#include "twosq/oracle.hpp"
#include "twosq/rational.hpp"
#include "twosq/residues.hpp"
#include "twosq/search.hpp"

namespace {

using twosq::Rational;
using u64 = std::uint64_t;

struct Record {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, u64 value) { add(std::move(key), std::to_string(value)); }
    void add_density(const std::string& key, const Rational& r) {
        add(key, twosq::to_string(r));
        add(key + "_decimal", twosq::to_decimal6(r));
    }
};

void print_records(const std::vector<Record>& records, const std::string& format) {
    if (records.empty()) return;
    if (format == "csv") {
        std::string header;
        for (const auto& [k, v] : records.front().fields)
            header += (header.empty() ? "" : ",") + k;
        std::cout << header << "\n";
        for (const Record& rec : records) {
            std::string row;
            for (const auto& [k, v] : rec.fields) row += (row.empty() ? "" : ",") + v;
            std::cout << row << "\n";
        }
    } else {
        bool first = true;
        for (const Record& rec : records) {
            if (!std::exchange(first, false) && records.size() > 1) std::cout << "\n";
            for (const auto& [k, v] : rec.fields) std::cout << k << "=" << v << "\n";
        }
    }
}

std::string prime_power_label(const twosq::arith::PrimePower& pp) {
    std::string label = std::to_string(pp.prime);
    if (pp.exponent > 1) label += "^" + std::to_string(pp.exponent);
    return label;
}

// floor(q * 10^6 + 1/2) rendered as 0.xxxxxx; exact integer arithmetic.
std::string big_decimal6(const twosq::density::BigRational& q) {
    mpz_class scaled = (q.get_num() * 1000000 * 2 + q.get_den()) / (2 * q.get_den());
    mpz_class whole = scaled / 1000000;
    mpz_class frac = scaled % 1000000;
    std::string frac_str = frac.get_str();
    return whole.get_str() + "." + std::string(6 - frac_str.size(), '0') + frac_str;
}

Record count_record(u64 n) {
    auto counts = twosq::residues::count(n);
    Record rec;
    rec.add("n", n);
    rec.add("count_s", counts.count_s);
    rec.add("count_n", counts.count_n);
    rec.add_density("density_s", counts.density_s);
    rec.add_density("density_n", counts.density_n);
    return rec;
}

int run_classify(u64 n, u64 x, const std::string& format) {
    auto verdict = twosq::residues::member(n, x);
    Record rec;
    rec.add("command", "classify");
    rec.add("n", n);
    rec.add("x", x);
    rec.add("membership", verdict.in_s ? "S" : "N");
    if (verdict.witness) rec.add("witness", prime_power_label(*verdict.witness));
    print_records({rec}, format);
    return 0;
}

int run_count(u64 n, const std::string& format) {
    Record rec = count_record(n);
    rec.fields.insert(rec.fields.begin(), {"command", "count"});
    print_records({rec}, format);
    return 0;
}

int run_table(u64 max_n, const std::string& format) {
    std::vector<Record> rows;
    for (u64 n = 1; n <= max_n; ++n) rows.push_back(count_record(n));
    print_records(rows, format);
    return 0;
}

int run_oracle_check(u64 max_n, u64 ceiling, const std::string& format) {
    bool found = false;
    u64 bad_n = 0, bad_x = 0;
    std::string kind;
#pragma omp parallel for schedule(dynamic)
    for (u64 n = 1; n <= max_n; ++n) {
        bool stop;
#pragma omp atomic read
        stop = found;
        if (stop) continue;
        auto oracle_set = twosq::oracle::enumerate_s(n, ceiling);
        auto f = twosq::arith::factorize(n);
        u64 local_x = 0;
        std::string local_kind;
        if (twosq::residues::count(f).count_s != oracle_set.popcount()) {
            local_kind = "count";
        } else {
            for (u64 x = 0; x < n; ++x) {
                if (twosq::residues::member(n, x, f).in_s != oracle_set.contains(x)) {
                    local_kind = "membership";
                    local_x = x;
                    break;
                }
            }
        }
        if (!local_kind.empty()) {
#pragma omp critical
            if (!found || n < bad_n) {
                found = true;
                bad_n = n;
                bad_x = local_x;
                kind = local_kind;
            }
        }
    }

    Record rec;
    rec.add("command", "oracle-check");
    rec.add("max_n", max_n);
    if (found) {
        rec.add("result", "disagreement");
        rec.add("kind", kind);
        rec.add("n", bad_n);
        if (kind == "membership") rec.add("x", bad_x);
    } else {
        rec.add("result", "all agree");
    }
    print_records({rec}, format);
    return found ? 1 : 0;
}

int run_asymptotics(u64 i_max, u64 s_max, const std::string& format) {
    std::vector<Record> rows;
    for (u64 i = 1; i <= i_max; ++i) {
        for (u64 s = 1; s <= s_max; ++s) {
            auto point = twosq::density::density_point(static_cast<std::uint32_t>(i),
                                                       static_cast<std::uint32_t>(s));
            Record rec;
            rec.add("i", i);
            rec.add("s", s);
            rec.add("density_n", point.density_n.get_str());
            rec.add("density_n_decimal", big_decimal6(point.density_n));
            rec.add("limit", point.limit_value.get_str());
            rec.add("limit_decimal", big_decimal6(point.limit_value));
            rows.push_back(std::move(rec));
        }
    }
    print_records(rows, format);
    return 0;
}

int run_search(u64 limit, const std::string& mode_text, int threads,
               const std::string& checkpoint_path, const std::string& export_csv,
               const std::string& export_members, bool progress, const std::string& format) {
    auto mode = twosq::search::parse_mode(mode_text);
    if (!mode) throw CLI::ValidationError("--mode must be one-power or two-powers");

    twosq::search::SearchOptions options;
    options.threads = threads;
    options.checkpoint_path = checkpoint_path;
    options.progress = progress;
    auto report = twosq::search::search(limit, *mode, options);

    Record rec;
    rec.add("command", "search");
    rec.add("mode", to_string(report.mode));
    rec.add("limit", report.limit);
    rec.add("candidates_scanned", report.candidates_scanned);
    rec.add("cursor", report.cursor);
    if (report.best) {
        rec.add("best_n", report.best->candidate.n);
        rec.add("best_k", static_cast<u64>(report.best->candidate.k));
        rec.add("best_m", report.best->candidate.odd_part);
        rec.add("best_count", report.best->count);
        rec.add_density("best_density", report.best->density);
    } else {
        rec.add("best", "none");
    }
    print_records({rec}, format);

    if (!export_csv.empty()) {
        std::ofstream out(export_csv, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + export_csv);
        out << "n,k,m,count,density,density_decimal\n";
        for (const auto& row : report.results) {
            Rational d = twosq::make_rational(row.count, row.n);
            out << row.n << "," << row.k << "," << row.odd_part << "," << row.count << ","
                << twosq::to_string(d) << "," << twosq::to_decimal6(d) << "\n";
        }
        if (!out.good()) throw std::runtime_error("write failed: " + export_csv);
    }
    if (!export_members.empty()) {
        if (!report.best) throw std::runtime_error("no best candidate: nothing to export");
        std::ofstream out(export_members, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + export_members);
        auto set = twosq::search::condition_set(report.best->candidate, report.mode, threads);
        for (u64 x = 0; x < set.candidate.n; ++x)
            if (set.contains(x)) out << x << "\n";
        if (!out.good()) throw std::runtime_error("write failed: " + export_members);
    }
    return 0;
}

int run_certify_lift(u64 n, u64 x, const std::string& mode_text, u64 samples,
                     const std::string& format) {
    auto mode = twosq::search::parse_mode(mode_text);
    if (!mode) throw CLI::ValidationError("--mode must be one-power or two-powers");
    auto split = twosq::arith::two_adic_split(n);
    auto candidate = twosq::search::make_candidate(split.exponent, split.odd_part);
    auto report = twosq::search::certify_lift(x, candidate, *mode, samples);

    Record rec;
    rec.add("command", "certify-lift");
    rec.add("n", n);
    rec.add("x", x);
    rec.add("mode", mode_text);
    rec.add("samples", report.samples);
    rec.add("counterexamples", static_cast<u64>(report.counterexamples.size()));
    rec.add("verdict", report.ok() ? "all-non-representable" : "FAILED");
    for (std::size_t i = 0; i < report.counterexamples.size() && i < 16; ++i)
        rec.add("counterexample_" + std::to_string(i), report.counterexamples[i]);
    print_records({rec}, format);
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sums of two squares in Z_n: classification, counts, and searches"};
    app.require_subcommand(1);

    std::string format = "table";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();

    u64 arg_n = 1, arg_x = 0, arg_max = 1, arg_i = 1, arg_s = 1;
    u64 arg_limit = 4, arg_samples = 100;
    u64 arg_ceiling = twosq::oracle::kDefaultOracleCeiling;
    int arg_threads = 0;
    std::string arg_mode = "one-power";
    std::string arg_resume = "twosq-search.checkpoint";
    std::string arg_export_csv, arg_export_members;
    bool arg_progress = false;

    auto* classify = app.add_subcommand("classify", "membership of x in S_n");
    classify->add_option("n", arg_n, "modulus")->required()->check(CLI::PositiveNumber);
    classify->add_option("x", arg_x, "residue")->required();

    auto* count = app.add_subcommand("count", "|S_n|, |N_n| and densities");
    count->add_option("n", arg_n, "modulus")->required()->check(CLI::PositiveNumber);

    auto* table = app.add_subcommand("table", "counts for every n up to max_n");
    table->add_option("max_n", arg_max, "largest modulus")->required()->check(CLI::PositiveNumber);

    auto* oracle_check =
        app.add_subcommand("oracle-check", "closed-form vs brute-force sweep");
    oracle_check->add_option("max_n", arg_max, "largest modulus")
        ->required()
        ->check(CLI::PositiveNumber);
    oracle_check->add_option("--ceiling", arg_ceiling, "oracle size ceiling");

    auto* search = app.add_subcommand("search", "scan moduli maximizing the certified density");
    search->add_option("--limit", arg_limit, "largest n to scan")->required();
    search->add_option("--mode", arg_mode, "one-power or two-powers");
    search->add_option("--threads", arg_threads, "worker threads (0 = default)");
    search->add_option("--resume", arg_resume, "checkpoint file (loaded if present)")
        ->capture_default_str();
    search->add_option("--export-csv", arg_export_csv, "write per-candidate rows to a file");
    search->add_option("--export-members", arg_export_members,
                       "write the members of the best condition set to a file");
    search->add_flag("--progress", arg_progress, "progress lines on stderr");

    auto* asymptotics = app.add_subcommand("asymptotics", "density rows for prime products");
    asymptotics->add_option("i_max", arg_i, "prime count bound")->required()->check(CLI::PositiveNumber);
    asymptotics->add_option("s_max", arg_s, "exponent bound")->required()->check(CLI::PositiveNumber);

    auto* certify = app.add_subcommand("certify-lift", "oracle-check lifts of a certified residue");
    certify->add_option("--n", arg_n, "modulus 2^k * m")->required()->check(CLI::PositiveNumber);
    certify->add_option("--x", arg_x, "residue in the condition set")->required();
    certify->add_option("--mode", arg_mode, "one-power or two-powers");
    certify->add_option("--samples", arg_samples, "lift count")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return run_classify(arg_n, arg_x, format);
        if (count->parsed()) return run_count(arg_n, format);
        if (table->parsed()) return run_table(arg_max, format);
        if (oracle_check->parsed()) return run_oracle_check(arg_max, arg_ceiling, format);
        if (search->parsed())
            return run_search(arg_limit, arg_mode, arg_threads, arg_resume, arg_export_csv,
                              arg_export_members, arg_progress, format);
        if (asymptotics->parsed())
            return run_asymptotics(arg_i, arg_s, format);
        if (certify->parsed())
            return run_certify_lift(arg_n, arg_x, arg_mode, arg_samples, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
