#pragma once

#include "ic4/engine.hpp"

#include <optional>
#include <vector>

namespace ic4
{

struct pd_options
{
    engine_options engine;
    effort_mode mode;
    // Outer-loop cap; default 2 * 2^latches.
    std::optional< std::size_t > max_iterations;
    // Shared reachable-state store; a private one is used when null.
    reach_store* store = nullptr;
};

// The longest clause falsified by s: one literal per latch.
[[nodiscard]] clause form_q( const state& s );

// Drops literals of q while q stays satisfied by I, stays inductive relative
// to P and inv, and is not falsified by a stored reachable state.
[[nodiscard]] clause strengthen_q( const clause& q, const transition_system& ts, const std::vector< clause >& inv,
                                   const reach_store& store );

// Local proof of Q = form_q(target) under constraint P and inv. Safe carries
// the local clauses J (Q itself excluded); Unsafe carries a global
// counterexample.
[[nodiscard]] verdict prove_local( const state& target, const transition_system& ts, const std::vector< clause >& inv,
                                   effort_mode mode, const engine_options& opts, reach_store& store,
                                   run_stats* stats = nullptr );

// Property decomposition: repeatedly picks a bad successor s of Inv, proves
// the single-clause property Q locally and conjoins the local invariant.
[[nodiscard]] verdict prove_pd( const transition_system& ts, const pd_options& opts, run_stats* stats = nullptr );

} // namespace ic4
