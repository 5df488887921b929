#pragma once

#include "ic4/engine.hpp"
#include "ic4/pd.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ic4
{

inline constexpr std::array< std::string_view, 5 > engine_names = { "ic3", "ic4-min", "ic4-max", "ic4-heur",
                                                                    "ic4-pd" };

[[nodiscard]] bool is_engine_name( std::string_view name );

struct run_config
{
    std::string engine = "ic4-min";
    engine_options opts;
    std::uint64_t heur_conflicts = 10'000;
    std::size_t heur_unpush_per_frame = 3;
};

struct run_outcome
{
    verdict v;
    run_stats stats;
    std::vector< trace > traces; // one per leaf of the reachable-state store
};

// Throws std::invalid_argument for an unknown engine name.
[[nodiscard]] run_outcome run_engine( const transition_system& ts, const run_config& cfg );

// Traces from the initial state to every store entry without successors.
[[nodiscard]] std::vector< trace > store_traces( const reach_store& store );

// HWMCC witness: "1", "b0", reset bits of the source latches, one line of
// input bits per transition, ".".
void write_witness( std::ostream& out, const transition_system& ts, const trace& t );

// Stimulus blocks (reset line, input lines, ".") for each trace.
void write_traces( std::ostream& out, const transition_system& ts, const std::vector< trace >& traces );

// Invariant as DIMACS: latch i is variable i + 1. When the invariant
// includes P, the property CNF is appended with its auxiliary variables
// numbered after the latches.
void write_invariant_dimacs( std::ostream& out, const transition_system& ts, const invariant& inv,
                             std::string_view model, std::string_view engine );

} // namespace ic4
