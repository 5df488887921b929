#include "ic4/engine.hpp"

#include <algorithm>
#include <tuple>

namespace ic4
{

// ---------------------------------------------------------------- frame_seq

void frame_seq::ensure( std::size_t level )
{
    if ( _delta.size() <= level )
        _delta.resize( level + 1 );
}

std::vector< clause > frame_seq::frame( std::size_t i ) const
{
    auto out = std::vector< clause >{};
    for ( std::size_t j = std::max< std::size_t >( i, 1 ); j < _delta.size(); ++j )
        out.insert( out.end(), _delta[ j ].begin(), _delta[ j ].end() );
    std::ranges::sort( out );
    return out;
}

bool frame_seq::excludes( const cube& c, std::size_t level ) const
{
    const auto negation = c.negate();
    for ( std::size_t j = std::max< std::size_t >( level, 1 ); j < _delta.size(); ++j )
        for ( const auto& cl : _delta[ j ] )
            if ( cl.subsumes( negation ) )
                return true;
    return false;
}

bool frame_seq::contains( const clause& cl, std::size_t level ) const
{
    return level < _delta.size() && std::ranges::binary_search( _delta[ level ], cl );
}

void frame_seq::insert( const clause& cl, std::size_t level )
{
    ensure( level );
    for ( std::size_t j = 1; j <= level; ++j )
        std::erase_if( _delta[ j ], [ & ]( const clause& other ) { return cl.subsumes( other ); } );
    auto& d = _delta[ level ];
    d.insert( std::ranges::lower_bound( d, cl ), cl );
}

bool frame_seq::erase( const clause& cl, std::size_t level )
{
    if ( level >= _delta.size() )
        return false;
    auto& d = _delta[ level ];
    const auto it = std::ranges::lower_bound( d, cl );
    if ( it == d.end() || *it != cl )
        return false;
    d.erase( it );
    return true;
}

std::size_t frame_seq::total() const
{
    std::size_t n = 0;
    for ( const auto& d : _delta )
        n += d.size();
    return n;
}

// ------------------------------------------------------------------- engine

namespace
{

constexpr std::size_t rebuild_threshold = 4000;

std::vector< bool > extract_inputs( const transition_system& ts, const std::vector< bool >& model )
{
    auto x = std::vector< bool >( ts.num_inputs() );
    for ( std::size_t i = 0; i < x.size(); ++i )
        x[ i ] = model[ ts.input_var( i ).index() ];
    return x;
}

} // namespace

engine::engine( const transition_system& ts, engine_options opts, reach_store* store,
                std::optional< local_target > local )
    : _ts{ ts }, _opts{ opts }, _store{ store }, _local{ std::move( local ) }
{
    if ( !_store )
    {
        _own_store = std::make_unique< reach_store >();
        _store = _own_store.get();
    }
    _store->seed( ts );
    _store_base = _store->generated();
    _start = std::chrono::steady_clock::now();
    _frames.ensure( 2 );
    rebuild_solver();
}

engine::~engine() = default;

void engine::rebuild_solver()
{
    _solver = std::make_unique< sat::solver_handle >( _ts.num_vars(), _opts.seed );
    for ( const auto& cl : _ts.trans() )
        _solver->add_clause( cl );
    for ( const auto& cl : _ts.prop_defs() )
        _solver->add_clause( cl );
    if ( const auto& bad = _ts.bad_current() )
        _solver->add_clause( { !*bad } );
    if ( _local )
    {
        _solver->add_clause( state_to_cube( _local->target ).negate().literals() );
        for ( const auto& cl : _local->constraint )
            _solver->add_clause( cl.literals() );
    }
    for ( const auto& cl : _ts.init() )
        _solver->add_clause( cl, 0 );
    for ( std::size_t j = 1; j < _frames.levels(); ++j )
        for ( const auto& cl : _frames.delta( j ) )
            _solver->add_clause( cl.literals(), j );
    _temporaries = 0;

    _lifter = std::make_unique< sat::solver_handle >( _ts.num_vars(), _opts.seed );
    for ( const auto& cl : _ts.trans() )
        _lifter->add_clause( cl );
}

void engine::check_time() const
{
    if ( _opts.time_limit && std::chrono::steady_clock::now() - _start > *_opts.time_limit )
        throw timeout{};
}

std::vector< literal > engine::frame_assumptions( std::size_t level )
{
    auto out = std::vector< literal >{};
    for ( std::size_t j = level; j < _frames.levels(); ++j )
        out.push_back( _solver->activation( j ) );
    return out;
}

std::vector< literal > engine::target_next() const
{
    if ( _local )
        return _ts.prime( state_to_cube( _local->target ).literals() );
    return { *_ts.bad_next() };
}

bool engine::target_initial() const
{
    if ( _local )
        return _ts.is_initial( _local->target );
    return _ts.is_bad( _ts.init_state() );
}

bool engine::state_hits_target( const state& s ) const
{
    return _local ? s == _local->target : _ts.is_bad( s );
}

sat::sat_result engine::query( std::vector< literal > assumptions, const char* category,
                               std::optional< std::uint64_t > budget )
{
    ++_stats.sat_calls[ category ];
    return _solver->solve( assumptions, budget );
}

cube engine::lift( const state& pred, const std::vector< bool >& input, const std::optional< cube >& succ )
{
    ++_stats.sat_calls[ "lift" ];
    auto assumptions = std::vector< literal >{};
    auto negated_target = std::vector< literal >{};
    if ( succ )
        for ( const auto lit : *succ )
            negated_target.push_back( !_ts.prime( lit ) );
    else if ( _local )
        for ( const auto lit : target_next() )
            negated_target.push_back( !lit );

    std::optional< literal > tmp;
    if ( succ || _local )
    {
        tmp = _lifter->add_temporary( negated_target );
        ++_temporaries;
        assumptions.push_back( *tmp );
    }
    else
        assumptions.push_back( !*_ts.bad_next() );

    for ( std::size_t i = 0; i < input.size(); ++i )
        assumptions.emplace_back( _ts.input_var( i ), !input[ i ] );
    const auto first_state = assumptions.size();
    for ( std::size_t i = 0; i < pred.size(); ++i )
        assumptions.emplace_back( _ts.latch_var( i ), !pred[ i ] );

    const auto r = _lifter->solve( assumptions );
    if ( tmp )
        _lifter->retire( *tmp );
    if ( !r.is_unsat() )
        return state_to_cube( pred );

    auto kept = std::vector< literal >{};
    for ( std::size_t i = first_state; i < assumptions.size(); ++i )
        if ( std::ranges::find( r.core, assumptions[ i ] ) != r.core.end() )
            kept.push_back( assumptions[ i ] );
    return cube{ std::move( kept ) };
}

std::optional< bool > engine::relatively_inductive( const clause& cl, std::size_t level,
                                                    std::optional< std::uint64_t > budget )
{
    const auto tmp = _solver->add_temporary( cl.literals() );
    ++_temporaries;
    auto assumptions = frame_assumptions( level - 1 );
    assumptions.push_back( tmp );
    for ( const auto lit : cl )
        assumptions.push_back( !_ts.prime( lit ) );
    const auto r = query( std::move( assumptions ), "generalize", budget );
    _solver->retire( tmp );
    if ( r.outcome == sat::status::unknown )
        return std::nullopt;
    return r.is_unsat();
}

void engine::add_clause( const clause& cl, std::size_t level )
{
    _frames.insert( cl, level );
    _solver->add_clause( cl.literals(), level );
    if ( _maximal && level < _k )
        _pending.emplace_back( cl, level );
}

void engine::inject_clause( const clause& cl, std::size_t level )
{
    _frames.insert( cl, level );
    _solver->add_clause( cl.literals(), level );
}

void engine::move_clause( const clause& cl, std::size_t from )
{
    _frames.erase( cl, from );
    add_clause( cl, from + 1 );
}

std::size_t engine::push_forward( const clause& cl, std::size_t level, std::size_t limit )
{
    while ( level < limit && relatively_inductive( cl, level + 1, std::nullopt ) == true )
        ++level;
    return level;
}

void engine::set_frontier( std::size_t k )
{
    _k = k;
    _frames.ensure( k + 1 );
}

clause engine::generalize( const cube& c, std::size_t level )
{
    auto cl = c.negate();
    std::size_t pos = 0;
    while ( pos < cl.size() && cl.size() > 1 )
    {
        auto candidate = cl.without( pos );
        if ( !_ts.init_implies( candidate ) || _store->find_falsifying( candidate, level ) ||
             relatively_inductive( candidate, level, std::nullopt ) != true )
        {
            ++pos;
            continue;
        }
        cl = std::move( candidate );
    }
    return cl;
}

std::optional< trace > engine::truncate_at_bad( const trace& t ) const
{
    for ( std::size_t j = 0; j < t.states.size(); ++j )
    {
        if ( !_ts.is_bad( t.states[ j ] ) )
            continue;
        auto out = trace{};
        out.states.assign( t.states.begin(), t.states.begin() + static_cast< std::ptrdiff_t >( j + 1 ) );
        out.inputs.assign( t.inputs.begin(), t.inputs.begin() + static_cast< std::ptrdiff_t >( j ) );
        return out;
    }
    return std::nullopt;
}

trace engine::build_trace( const std::vector< proof_obligation >& pool, std::size_t index ) const
{
    auto inputs = std::vector< std::vector< bool > >{};
    auto cur = index;
    while ( true )
    {
        const auto& ob = pool[ cur ];
        if ( ob.successor || ob.into_target )
            inputs.push_back( ob.input );
        if ( !ob.successor )
            break;
        cur = *ob.successor;
    }

    auto t = simulate_trace( _ts, _ts.init_state(), inputs );
    const auto& root = pool[ cur ];
    const auto& last = t.states.back();
    const bool landed = root.into_target ? state_hits_target( last ) : satisfies( last, root.c );
    if ( !landed )
        throw engine_error( "reconstructed trace misses its obligation: ends in " + to_string( last ) );
    return t;
}

block_result engine::block( proof_obligation root, std::optional< std::uint64_t > budget )
{
    const auto start_conflicts = _solver->conflicts();
    auto pool = std::vector< proof_obligation >{ std::move( root ) };
    // (level, depth, sequence) -> pool index
    auto queue = std::set< std::tuple< std::size_t, std::size_t, std::size_t, std::size_t > >{};
    std::size_t sequence = 0;
    queue.emplace( pool[ 0 ].level, pool[ 0 ].depth, sequence++, 0 );

    while ( !queue.empty() )
    {
        check_time();
        const auto key = *queue.begin();
        queue.erase( queue.begin() );
        const auto idx = std::get< 3 >( key );
        ++_stats.obligations;

        if ( _ts.intersects_init( pool[ idx ].c ) )
            return reached{ build_trace( pool, idx ) };

        const auto level = pool[ idx ].level;
        if ( level == 0 || _frames.excludes( pool[ idx ].c, level ) )
            continue;

        auto remaining = std::optional< std::uint64_t >{};
        if ( budget )
        {
            const auto used = _solver->conflicts() - start_conflicts;
            if ( used >= *budget )
                return exhausted{};
            remaining = *budget - used;
        }

        const auto c = pool[ idx ].c;
        const auto tmp = _solver->add_temporary( c.negate().literals() );
        ++_temporaries;
        auto assumptions = frame_assumptions( level - 1 );
        assumptions.push_back( tmp );
        for ( const auto lit : c )
            assumptions.push_back( _ts.prime( lit ) );
        const auto r = query( std::move( assumptions ), "consecution", remaining );
        _solver->retire( tmp );

        if ( r.outcome == sat::status::unknown )
            return exhausted{};

        if ( r.is_sat() )
        {
            const auto p = sat::extract_state( r.model, sat::copy::current, _ts.num_latches() );
            auto x = extract_inputs( _ts, r.model );
            auto pc = lift( p, x, c );
            pool.push_back( { std::move( pc ), level - 1, pool[ idx ].depth + 1, idx, std::move( x ), false } );
            queue.emplace( level - 1, pool.back().depth, sequence++, pool.size() - 1 );
            queue.insert( key );
            continue;
        }

        const auto cl = generalize( c, level );
        add_clause( cl, push_forward( cl, level, std::max( level, _k ) ) );
        if ( _temporaries > rebuild_threshold )
            rebuild_solver();
    }
    return blocked{};
}

push_condition engine::check_pushing_condition( const clause& cl, std::size_t level,
                                                std::optional< std::uint64_t > budget )
{
    auto assumptions = frame_assumptions( level );
    for ( const auto lit : cl )
        assumptions.push_back( !_ts.prime( lit ) );
    const auto r = query( std::move( assumptions ), "push", budget );
    if ( r.outcome == sat::status::unknown )
        return exhausted{};
    if ( r.is_unsat() )
        return holds{};
    return fails{ sat::extract_state( r.model, sat::copy::next, _ts.num_latches() ) };
}

push_result engine::push_standard( std::size_t from, std::size_t to )
{
    for ( std::size_t i = std::max< std::size_t >( from, 1 ); i <= to; ++i )
    {
        _frames.ensure( i + 1 );
        const auto snapshot = _frames.delta( i );
        for ( const auto& cl : snapshot )
        {
            if ( !_frames.contains( cl, i ) || _unpushable.contains( { cl, i } ) )
                continue;
            if ( std::holds_alternative< holds >( check_pushing_condition( cl, i ) ) )
                move_clause( cl, i );
        }
        if ( _frames.delta( i ).empty() )
            return fixed_point{ i };
    }
    return not_yet{};
}

verdict engine::make_safe( std::size_t level )
{
    auto inv = invariant{ _frames.frame( level ), true };
    if ( !_local )
        if ( const auto failure = oracle::certify_invariant( _ts, inv ) )
            throw engine_error( "invariant certification failed: " + failure->what );
    return safe{ std::move( inv ), _k };
}

void engine::check_soundness( const oracle::reach_map& rm ) const
{
    if ( !rm.truncated() )
    {
        const auto states = rm.states();
        for ( std::size_t j = 1; j < _frames.levels(); ++j )
            for ( const auto& cl : _frames.delta( j ) )
                for ( const auto& s : states )
                    if ( *rm.depth( s ) <= j && !satisfies( s, cl ) )
                        throw engine_error( "frame soundness: clause " + to_string( cl ) + " at level " +
                                            std::to_string( j ) + " excludes reachable state " + to_string( s ) );
    }
    for ( const auto& e : _store->entries() )
    {
        if ( !rm.truncated() && !rm.reachable( e.s ) )
            throw engine_error( "store holds unreachable state " + to_string( e.s ) );
        for ( std::size_t j = std::max< std::size_t >( e.depth, 1 ); j < _frames.levels(); ++j )
            for ( const auto& cl : _frames.delta( j ) )
                if ( !satisfies( e.s, cl ) )
                    throw engine_error( "store state " + to_string( e.s ) + " violates F_" + std::to_string( j ) );
    }
}

void engine::self_check() const
{
    if ( _opts.self_check )
        check_soundness( *_opts.self_check );
}

verdict engine::prove_ic3()
{
    _stats.engine = "ic3";
    return run( std::nullopt );
}

verdict engine::run( std::optional< effort_mode > mode )
{
    _start = std::chrono::steady_clock::now();
    _maximal = mode && mode->kind == effort::maximal;

    auto result = [ & ]() -> verdict {
        try
        {
            if ( !_local && !_ts.bad_current() )
            {
                _k = 0;
                return safe{ invariant{ {}, true }, 0 };
            }
            if ( target_initial() )
                return unsafe{ trace{ { _ts.init_state() }, {} } };

            set_frontier( 1 );
            while ( true )
            {
                if ( _k > _opts.max_frames )
                    return unknown{ "frame limit" };

                while ( true )
                {
                    check_time();
                    const auto r = query( [ & ] {
                        auto a = frame_assumptions( _k );
                        for ( const auto lit : target_next() )
                            a.push_back( lit );
                        return a;
                    }(),
                                          "bad", std::nullopt );
                    if ( r.is_unsat() )
                        break;
                    const auto p = sat::extract_state( r.model, sat::copy::current, _ts.num_latches() );
                    auto x = extract_inputs( _ts, r.model );
                    auto pc = lift( p, x, std::nullopt );
                    const auto br = block( { std::move( pc ), _k, 1, std::nullopt, std::move( x ), true } );
                    if ( const auto* hit = std::get_if< reached >( &br ) )
                        return unsafe{ truncate_at_bad( hit->t ).value_or( hit->t ) };
                    if ( _maximal )
                        if ( auto v = fix_lower_levels() )
                            return *v;
                }
                self_check();

                if ( !mode )
                {
                    const auto pr = push_standard( 1, _k );
                    if ( const auto* fp = std::get_if< fixed_point >( &pr ) )
                        return make_safe( fp->level );
                }
                else
                {
                    const auto pr = push_standard( 1, _k - 1 );
                    if ( const auto* fp = std::get_if< fixed_point >( &pr ) )
                        return make_safe( fp->level );
                    const auto out = new_push( *mode );
                    if ( const auto* inv = std::get_if< invariant_at >( &out ) )
                        return make_safe( inv->level );
                    if ( const auto* cex = std::get_if< counterexample >( &out ) )
                        return unsafe{ cex->t };
                    self_check();
                }
                set_frontier( _k + 1 );
            }
        }
        catch ( const timeout& )
        {
            return unknown{ "time limit" };
        }
    }();

    if ( const auto* u = std::get_if< unsafe >( &result ) )
    {
        if ( const auto bad_step = first_invalid_step( _ts, u->cex ) )
            throw engine_error( "counterexample fails at step " + std::to_string( *bad_step ) );
        if ( !state_hits_target( u->cex.states.back() ) && !_ts.is_bad( u->cex.states.back() ) )
            throw engine_error( "counterexample does not end in a bad state" );
    }

    _stats.verdict = verdict_name( result );
    _stats.frames_opened = _k;
    _stats.clauses_per_frame.clear();
    for ( std::size_t j = 0; j < _frames.levels(); ++j )
        _stats.clauses_per_frame.push_back( _frames.delta( j ).size() );
    _stats.unpushable = _unpushable.size();
    _stats.reach_generated = _store->generated() - _store_base;
    if ( mode )
        check_state_bounds();
    return result;
}

} // namespace ic4
