#ifndef TROPLIFT_CLI_HPP
#define TROPLIFT_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <troplift/lift.hpp>
#include <troplift/oracle.hpp>

namespace troplift::cli
{

// Exit codes.
constexpr int exit_ok = 0;       // member / valid
constexpr int exit_internal = 1; // unexpected failure
constexpr int exit_input = 2;    // malformed input or usage
constexpr int exit_negative = 3; // not_member / invalid

// Runs one command line (argv[0] is the program name). JSON results go to
// out, diagnostics to err.
int run_command(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

struct BenchConfig {
    std::vector<std::size_t> sizes{25, 50, 100, 200}; // n; m = n / 2
    std::vector<std::size_t> oracle_sizes{2, 4, 6, 8, 10};
    std::uint64_t seed = 1;
    std::size_t reps = 3;
    std::size_t max_cols = default_oracle_max_cols;
    DecideOptions options{PivotRule::MinValuation, Reduction::Auto};
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t m = 0;
    double decide_ms = 0;               // median over the repetitions
    std::optional<double> oracle_ms;    // median; empty beyond the column guard
    std::size_t members = 0;            // member verdicts among the repetitions
};

// Random instances with at most 3 terms per entry and exponents in [-5, 5],
// paired with random points; rows sorted by n.
std::vector<BenchRow> run_bench(const BenchConfig &cfg);
std::string bench_csv(const std::vector<BenchRow> &rows);
// Least-squares slope of log(time) against log(n).
double loglog_slope(const std::vector<std::pair<double, double>> &points);

} // namespace troplift::cli

#endif
