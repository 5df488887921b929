#pragma once

#include "ic4/aiger.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ic4
{

struct fuzz_config
{
    std::size_t count = 200;
    std::size_t max_latches = 8;
    std::size_t max_ands = 32;
    std::size_t max_inputs = 2;
    std::uint64_t seed = 1;
    std::uint64_t heur_conflicts = 10'000;
    std::size_t heur_unpush_per_frame = 3;
    // Failing models are written here as <model>.aag when set.
    std::optional< std::string > dump_dir;
};

struct fuzz_row
{
    std::string model;
    std::string engine;
    bool reuse = true;
    std::string verdict;
    std::size_t frames = 0;
    std::uint32_t diameter = 0;
    std::size_t reach_generated = 0;
};

struct fuzz_report
{
    std::vector< fuzz_row > rows;
    std::vector< std::string > failures;

    std::size_t models = 0;
    std::size_t safe_models = 0;
    std::size_t unsafe_models = 0;

    std::size_t verdict_mismatches = 0;
    std::size_t convergence_violations = 0;
    std::size_t bound_violations = 0;
    std::size_t certificate_failures = 0;
    std::size_t pd_certificate_failures = 0;
    std::size_t internal_errors = 0;

    // Generated reachable states summed over IC4 runs with and without reuse.
    std::size_t reuse_pairs = 0;
    std::size_t reach_with_reuse = 0;
    std::size_t reach_without_reuse = 0;

    [[nodiscard]] bool ok() const { return failures.empty(); }
};

// Random AIG with the given numbers of latches, AND gates and inputs.
[[nodiscard]] aiger::circuit random_circuit( std::mt19937_64& rng, std::size_t latches, std::size_t ands,
                                             std::size_t inputs );

// Generates cfg.count models, alternating between safe and unsafe targets by
// rejection against the oracle, runs every engine (IC4 modes both with and
// without state reuse) and checks verdicts, certificates and bounds.
[[nodiscard]] fuzz_report run_fuzz( const fuzz_config& cfg );

// "model,engine,reuse,verdict,frames,diameter,reach_generated"
void write_fuzz_csv( std::ostream& out, const fuzz_report& report );

} // namespace ic4
