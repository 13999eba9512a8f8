#pragma once
// Randomized invariant suites behind `hyptimes properties`. Every case is generated from
// derive_seed(seed, case_index), so a failing case is reproducible from its index alone.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hyptimes::app {

struct CaseFailure {
    std::size_t case_index = 0;
    std::string check;
    std::string detail;
    std::string input;  // enough to rebuild the case by hand
};

struct SuiteReport {
    std::string suite;
    std::size_t cases = 0;
    std::size_t checks = 0;
    std::vector<CaseFailure> failures;

    bool passed() const { return failures.empty(); }
    void merge(const SuiteReport& other);
};

std::vector<std::string> suite_names();

/// Throws InvalidParameter for an unknown suite name.
SuiteReport run_suite(const std::string& name, std::size_t cases, std::uint64_t seed);

/// Every time-set operation against the brute-force oracle, on one sequence.
/// Returns the names of the operations that disagreed.
std::vector<std::string> compare_with_oracle(std::span<const double> a, double delta,
                                             std::size_t m, std::size_t n_window);

/// Random cases: integer sequences with dyadic delta mixed with real sequences of length
/// <= 64 whose partial sums stay clear of ties.
SuiteReport timesets_oracle_suite(std::size_t cases, std::uint64_t seed);

/// Deterministic integer corpus over {-2, ..., 2}: every sequence of length <= 7, plus
/// `per_length` evenly strided sequences of each length 8 .. 12. Each sequence is checked
/// under two (delta, M, N) settings with delta in {1/2, 1}.
SuiteReport timesets_oracle_exhaustive(std::size_t per_length = 2000);

SuiteReport inequalities_suite(std::size_t cases, std::uint64_t seed);
SuiteReport misiurewicz_suite(std::size_t cases, std::uint64_t seed);

/// Symmetry and triangle inequality of the weak-* distance on random triples.
SuiteReport metric_suite(std::size_t cases, std::uint64_t seed);

/// defect(mu_x^n) <= 4/n for every built-in system, `seeds` seeds and each horizon.
SuiteReport defect_suite(std::size_t seeds, std::span<const std::size_t> horizons,
                         std::uint64_t seed);

/// suite,case,check,detail,input
std::string failures_csv(const SuiteReport& report);

} // namespace hyptimes::app
