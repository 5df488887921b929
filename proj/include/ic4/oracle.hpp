#pragma once

#include "ic4/transition_system.hpp"
#include "ic4/verdict.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace ic4::oracle
{

inline constexpr std::size_t default_max_states = std::size_t{ 1 } << 20;

// Explicit reachable-state map. States are packed with latch i at bit i.
class reach_map
{
    std::unordered_map< std::uint64_t, std::uint32_t > _depth;
    std::vector< std::uint64_t > _order; // BFS discovery order
    std::size_t _num_latches = 0;
    std::uint32_t _diameter = 0;
    bool _truncated = false;

    friend reach_map bfs( const transition_system& ts, std::size_t max_states );

public:
    [[nodiscard]] std::size_t size() const { return _order.size(); }
    [[nodiscard]] std::uint32_t diameter() const { return _diameter; }
    [[nodiscard]] bool truncated() const { return _truncated; }

    [[nodiscard]] std::optional< std::uint32_t > depth( const state& s ) const;
    [[nodiscard]] bool reachable( const state& s ) const { return depth( s ).has_value(); }

    // States in BFS discovery order (non-decreasing depth).
    [[nodiscard]] std::vector< state > states() const;

    // Number of reachable states per depth, index = depth.
    [[nodiscard]] std::vector< std::size_t > histogram() const;
};

// Breadth-first exploration by circuit evaluation over all input vectors in
// numeric order. Models with more than 64 latches or 20 inputs are reported
// as truncated without exploration.
[[nodiscard]] reach_map bfs( const transition_system& ts, std::size_t max_states = default_max_states );

struct verdict_safe {};
struct verdict_unsafe
{
    std::uint32_t depth;
};
struct verdict_inconclusive {};
using oracle_result = std::variant< verdict_safe, verdict_unsafe, verdict_inconclusive >;

[[nodiscard]] oracle_result oracle_verdict( const transition_system& ts, const reach_map& rm );

struct check_failure
{
    std::string what;
    std::optional< state > witness;
};

// std::nullopt means pass.
using check_result = std::optional< check_failure >;

// SAT certificate only: I -> inv, inv & T -> inv', inv -> P.
[[nodiscard]] check_result certify_invariant( const transition_system& ts, const invariant& inv );

// Explicit check that every reachable state satisfies inv, followed by the
// SAT certificate.
[[nodiscard]] check_result check_invariant( const transition_system& ts, const invariant& inv, const reach_map& rm );

// Index of the first failing step (see first_invalid_step), nullopt = pass.
[[nodiscard]] std::optional< std::size_t > validate_trace( const transition_system& ts, const trace& t );

// True iff inv (with P if requested) holds in s.
[[nodiscard]] bool holds_in( const transition_system& ts, const invariant& inv, const state& s );

// "depth,states" CSV.
void write_histogram_csv( std::ostream& out, const reach_map& rm );

} // namespace ic4::oracle
