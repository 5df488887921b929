#include "ic4/engine.hpp"

namespace ic4
{

const char* effort_name( effort e )
{
    switch ( e )
    {
    case effort::minimal:
        return "minimal";
    case effort::maximal:
        return "maximal";
    case effort::heuristic:
        return "heuristic";
    }
    return "?";
}

effort_mode effort_mode::heuristic( std::uint64_t conflicts, std::size_t unpush_per_frame )
{
    if ( conflicts == 0 || unpush_per_frame == 0 )
        throw std::invalid_argument( "heuristic budgets must be positive" );
    return { effort::heuristic, conflicts, unpush_per_frame };
}

verdict engine::prove_ic4( effort_mode mode )
{
    switch ( mode.kind )
    {
    case effort::minimal:
        _stats.engine = "ic4-min";
        break;
    case effort::maximal:
        _stats.engine = "ic4-max";
        break;
    case effort::heuristic:
        _stats.engine = "ic4-heur";
        break;
    }
    _stats.effort = effort_name( mode.kind );
    return run( mode );
}

engine::attempt_result engine::attempt_fix( const clause& cl, std::size_t level,
                                            std::optional< std::uint64_t > budget )
{
    const auto proven = [ & ]( trace t ) {
        _unpushable.emplace( cl, level );
        _last_trace = std::move( t );
        return attempt_result::proven_unpushable;
    };

    // A stored state within reach falsifying cl settles the question without SAT.
    if ( _opts.reuse )
        if ( const auto hit = _store->find_falsifying( cl, level + 1 ) )
        {
            ++_stats.reuse_hits;
            return proven( _store->trace_to( *hit ) );
        }

    const auto start_conflicts = _solver->conflicts();
    const auto condition = check_pushing_condition( cl, level, budget );
    if ( std::holds_alternative< exhausted >( condition ) )
        return attempt_result::budget_out;
    if ( std::holds_alternative< holds >( condition ) )
    {
        move_clause( cl, level );
        return attempt_result::pushed;
    }

    const auto& s = std::get< fails >( condition ).witness;
    if ( _opts.reuse )
        if ( const auto hit = _store->covers( s ); hit && ( *_store )[ *hit ].depth <= level + 1 )
        {
            ++_stats.reuse_hits;
            return proven( _store->trace_to( *hit ) );
        }

    auto remaining = std::optional< std::uint64_t >{};
    if ( budget )
    {
        const auto used = _solver->conflicts() - start_conflicts;
        if ( used >= *budget )
            return attempt_result::budget_out;
        remaining = *budget - used;
    }

    const auto br = block( { state_to_cube( s ), level + 1, 0, std::nullopt, {}, false }, remaining );
    if ( std::holds_alternative< exhausted >( br ) )
        return attempt_result::budget_out;
    if ( std::holds_alternative< blocked >( br ) )
        return attempt_result::blocked_state;

    const auto& t = std::get< reached >( br ).t;
    if ( auto cex = truncate_at_bad( t ) )
    {
        _cex = std::move( cex );
        return attempt_result::found_cex;
    }
    _store->add_trace( _ts, t );
    return proven( t );
}

std::optional< verdict > engine::fix_lower_levels()
{
    for ( std::size_t next = 0; next < _pending.size(); ++next )
    {
        const auto [ cl, level ] = _pending[ next ];
        while ( level < _k && _frames.contains( cl, level ) && !_unpushable.contains( { cl, level } ) )
        {
            const auto r = attempt_fix( cl, level, std::nullopt );
            if ( r == attempt_result::found_cex )
            {
                _pending.clear();
                return unsafe{ *_cex };
            }
            if ( r != attempt_result::blocked_state )
                break;
        }
    }
    _pending.clear();
    return std::nullopt;
}

push_outcome engine::new_push( effort_mode mode )
{
    const auto k = _k;
    _frames.ensure( k + 1 );

    std::size_t proofs = 0;
    bool plain = false;
    bool budget_hit = false;
    std::optional< unpushable > first;

    bool new_clauses = true;
    while ( new_clauses )
    {
        new_clauses = false;
        const auto snapshot = _frames.delta( k );
        for ( const auto& cl : snapshot )
        {
            if ( !_frames.contains( cl, k ) || _unpushable.contains( { cl, k } ) )
                continue;

            if ( plain )
            {
                if ( std::holds_alternative< holds >( check_pushing_condition( cl, k ) ) )
                    move_clause( cl, k );
                continue;
            }

            const auto budget =
                mode.kind == effort::heuristic ? std::optional< std::uint64_t >{ mode.conflicts } : std::nullopt;
            switch ( attempt_fix( cl, k, budget ) )
            {
            case attempt_result::pushed:
                break;
            case attempt_result::proven_unpushable:
                ++proofs;
                if ( !first )
                    first = unpushable{ cl, *_last_trace };
                if ( mode.kind == effort::minimal ||
                     ( mode.kind == effort::heuristic && proofs >= mode.unpush_per_frame ) )
                    plain = true;
                break;
            case attempt_result::blocked_state:
                new_clauses = true;
                if ( _maximal )
                    if ( auto v = fix_lower_levels() )
                        return counterexample{ std::get< unsafe >( *v ).cex };
                break;
            case attempt_result::budget_out:
                budget_hit = true;
                plain = true;
                break;
            case attempt_result::found_cex:
                return counterexample{ *_cex };
            }
        }
    }

    for ( std::size_t i = 1; i <= k; ++i )
        if ( _frames.delta( i ).empty() )
            return invariant_at{ i };
    if ( first )
        return *first;
    if ( !budget_hit )
        throw engine_error( "new_push left clauses unresolved without a proof" );
    return exhausted{};
}

void engine::check_state_bounds() const
{
    if ( _local )
        return;
    const auto generated = _store->generated() - _store_base;
    const auto k = _k;
    if ( !_maximal && _stats.effort == effort_name( effort::minimal ) && generated > k * ( k + 1 ) / 2 )
        throw bound_violation( "minimal mode generated " + std::to_string( generated ) + " states with k = " +
                            std::to_string( k ) );
    if ( _maximal && generated > k * _unpushable.size() )
        throw bound_violation( "maximal mode generated " + std::to_string( generated ) + " states with k = " +
                            std::to_string( k ) + " and " + std::to_string( _unpushable.size() ) +
                            " unpushable clauses" );
}

} // namespace ic4
