#include "ic4/pd.hpp"

#include <algorithm>
#include <limits>

namespace ic4
{

namespace
{

// Solver over T with P and the given clauses on the current-state side.
sat::solver_handle constrained_solver( const transition_system& ts, const std::vector< clause >& inv,
                                       std::uint64_t seed )
{
    auto solver = sat::solver_handle{ ts.num_vars(), seed };
    for ( const auto& cl : ts.trans() )
        solver.add_clause( cl );
    for ( const auto& cl : ts.prop_defs() )
        solver.add_clause( cl );
    if ( const auto& bad = ts.bad_current() )
        solver.add_clause( { !*bad } );
    for ( const auto& cl : inv )
        solver.add_clause( cl.literals() );
    return solver;
}

std::vector< literal > primed_negation( const transition_system& ts, const clause& cl )
{
    auto out = std::vector< literal >{};
    for ( const auto lit : cl )
        out.push_back( !ts.prime( lit ) );
    return out;
}

// I -> J and inv & P & J & T -> J'.
void certify_local( const transition_system& ts, const std::vector< clause >& inv, const std::vector< clause >& j,
                    std::uint64_t seed )
{
    auto context = inv;
    context.insert( context.end(), j.begin(), j.end() );
    auto solver = constrained_solver( ts, context, seed );
    for ( const auto& cl : j )
    {
        if ( !ts.init_implies( cl ) )
            throw engine_error( "local invariant clause " + to_string( cl ) + " excludes the initial state" );
        if ( solver.solve( primed_negation( ts, cl ) ).is_sat() )
            throw engine_error( "local invariant clause " + to_string( cl ) + " is not inductive" );
    }
}

void merge( run_stats& into, const run_stats& from )
{
    for ( const auto& [ category, n ] : from.sat_calls )
        into.sat_calls[ category ] += n;
    into.obligations += from.obligations;
    into.unpushable += from.unpushable;
    into.reuse_hits += from.reuse_hits;
    into.frames_opened = std::max( into.frames_opened, from.frames_opened );
}

void add_unique( std::vector< clause >& inv, const clause& cl )
{
    if ( std::ranges::find( inv, cl ) == inv.end() )
        inv.push_back( cl );
}

} // namespace

clause form_q( const state& s )
{
    return state_to_cube( s ).negate();
}

clause strengthen_q( const clause& q, const transition_system& ts, const std::vector< clause >& inv,
                     const reach_store& store )
{
    auto solver = constrained_solver( ts, inv, 0 );
    auto cl = q;
    std::size_t pos = 0;
    while ( pos < cl.size() && cl.size() > 1 )
    {
        auto candidate = cl.without( pos );
        bool keep = ts.init_implies( candidate ) &&
                    !store.find_falsifying( candidate, std::numeric_limits< std::size_t >::max() );
        if ( keep )
        {
            const auto act = solver.add_temporary( candidate.literals() );
            auto assumptions = primed_negation( ts, candidate );
            assumptions.push_back( act );
            keep = solver.solve( assumptions ).is_unsat();
            solver.retire( act );
        }
        if ( keep )
            cl = std::move( candidate );
        else
            ++pos;
    }
    return cl;
}

verdict prove_local( const state& target, const transition_system& ts, const std::vector< clause >& inv,
                     effort_mode mode, const engine_options& opts, reach_store& store, run_stats* stats )
{
    auto e = engine{ ts, opts, &store, local_target{ target, inv } };
    auto v = e.prove_ic4( mode );
    if ( stats )
        *stats = e.stats();
    if ( auto* s = std::get_if< safe >( &v ) )
    {
        auto all = s->inv.clauses;
        all.push_back( form_q( target ) );
        certify_local( ts, inv, all, opts.seed );
        s->inv.includes_property = false;
    }
    return v;
}

verdict prove_pd( const transition_system& ts, const pd_options& opts, run_stats* stats )
{
    auto total = run_stats{};
    total.engine = "ic4-pd";
    total.effort = effort_name( opts.mode.kind );
    total.pd = pd_stats{};

    auto own_store = reach_store{};
    auto& store = opts.store ? *opts.store : own_store;
    store.seed( ts );
    const auto store_base = store.generated();

    auto local_opts = opts.engine;
    const auto start = std::chrono::steady_clock::now();
    const oracle::reach_map* rm = opts.engine.self_check;
    if ( rm && !std::holds_alternative< oracle::verdict_safe >( oracle::oracle_verdict( ts, *rm ) ) )
        rm = nullptr;
    local_opts.self_check = rm;

    auto inv = std::vector< clause >{};
    const auto cap = opts.max_iterations.value_or(
        ts.num_latches() < 40 ? std::size_t{ 2 } << ts.num_latches() : std::numeric_limits< std::size_t >::max() );

    const auto result = [ & ]() -> verdict {
        if ( !ts.bad_current() )
            return safe{ invariant{ {}, true }, 0 };
        if ( ts.is_bad( ts.init_state() ) )
            return unsafe{ trace{ { ts.init_state() }, {} } };

        for ( std::size_t iteration = 0; iteration < cap; ++iteration )
        {
            if ( opts.engine.time_limit )
            {
                const auto elapsed = std::chrono::duration_cast< std::chrono::milliseconds >(
                    std::chrono::steady_clock::now() - start );
                if ( elapsed >= *opts.engine.time_limit )
                    return unknown{ "time limit" };
                local_opts.time_limit = *opts.engine.time_limit - elapsed;
            }

            // A bad state one step from Inv & P; none means Inv & P is inductive.
            auto solver = constrained_solver( ts, inv, opts.engine.seed );
            ++total.sat_calls[ "decompose" ];
            const auto r = solver.solve( std::vector< literal >{ *ts.bad_next() } );
            if ( r.is_unsat() )
            {
                auto certificate = invariant{ inv, true };
                if ( const auto failure = oracle::certify_invariant( ts, certificate ) )
                    throw engine_error( "accumulated invariant fails certification: " + failure->what );
                return safe{ std::move( certificate ), total.frames_opened };
            }

            const auto s = sat::extract_state( r.model, sat::copy::next, ts.num_latches() );
            const auto q = form_q( s );
            ++total.pd->q_generated;

            auto local_stats = run_stats{};
            auto v = prove_local( s, ts, inv, opts.mode, local_opts, store, &local_stats );
            merge( total, local_stats );
            if ( !is_safe( v ) )
                return v;

            const auto& j = std::get< safe >( v ).inv.clauses;
            if ( j.empty() )
            {
                ++total.pd->q_inductive;
                const auto strong = strengthen_q( q, ts, inv, store );
                total.pd->literals_removed += q.size() - strong.size();
                add_unique( inv, strong );
            }
            else
            {
                add_unique( inv, q );
                for ( const auto& cl : j )
                    add_unique( inv, cl );
            }

            if ( std::ranges::all_of( inv, [ & ]( const clause& cl ) { return satisfies( s, cl ); } ) )
                throw engine_error( "decomposition made no progress on state " + to_string( s ) );
            if ( rm )
                for ( const auto& reachable : rm->states() )
                    for ( const auto& cl : inv )
                        if ( !satisfies( reachable, cl ) )
                            throw engine_error( "accumulated invariant excludes reachable state " +
                                                to_string( reachable ) );
        }
        return unknown{ "iteration limit" };
    }();

    if ( const auto* u = std::get_if< unsafe >( &result ) )
    {
        if ( const auto step = first_invalid_step( ts, u->cex ) )
            throw engine_error( "decomposition counterexample fails at step " + std::to_string( *step ) );
        if ( !ts.is_bad( u->cex.states.back() ) )
            throw engine_error( "decomposition counterexample does not end in a bad state" );
    }

    total.verdict = verdict_name( result );
    total.reach_generated = store.generated() - store_base;
    if ( stats )
        *stats = total;
    return result;
}

} // namespace ic4
