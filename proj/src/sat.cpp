#include "ic4/sat.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace ic4::sat
{

namespace
{

// Luby sequence with base 2: 1 1 2 1 1 2 4 ...
double luby( std::uint64_t i )
{
    std::uint64_t size = 1;
    std::uint64_t seq = 0;
    while ( size < i + 1 )
    {
        ++seq;
        size = 2 * size + 1;
    }
    while ( size - 1 != i )
    {
        size = ( size - 1 ) >> 1;
        --seq;
        i = i % size;
    }
    return static_cast< double >( std::uint64_t{ 1 } << seq );
}

constexpr double var_decay = 0.95;
constexpr double clause_decay = 0.999;
constexpr std::uint64_t restart_base = 100;

} // namespace

cdcl_solver::cdcl_solver( std::uint64_t seed ) : _rng{ seed } {}

var cdcl_solver::new_var()
{
    const auto v = static_cast< std::uint32_t >( _assigns.size() );
    _assigns.push_back( l_undef );
    _level.push_back( 0 );
    _reason.push_back( no_reason );
    _polarity.push_back( false );
    // Seeded tie-breaking noise; small enough never to dominate a bump.
    _activity.push_back( std::uniform_real_distribution< double >( 0.0, 1e-5 )( _rng ) );
    _heap_index.push_back( -1 );
    _seen.push_back( false );
    _model.push_back( false );
    _watches.emplace_back();
    _watches.emplace_back();
    _failed.push_back( false );
    _failed.push_back( false );
    heap_insert( v );
    return var{ v };
}

void cdcl_solver::add_clause( std::span< const literal > input )
{
    if ( !_ok )
        return;
    cancel_until( 0 );

    auto lits = std::vector< std::uint32_t >{};
    lits.reserve( input.size() );
    for ( const auto l : input )
    {
        while ( l.variable().index() >= num_vars() )
            new_var();
        lits.push_back( l.code() );
    }
    std::ranges::sort( lits );

    // Drop duplicates and false literals; tautologies and satisfied clauses vanish.
    auto kept = std::vector< std::uint32_t >{};
    for ( std::size_t i = 0; i < lits.size(); ++i )
    {
        if ( i > 0 && lits[ i ] == lits[ i - 1 ] )
            continue;
        if ( i > 0 && lits[ i ] == ( lits[ i - 1 ] ^ 1u ) )
            return;
        const auto v = lit_value( lits[ i ] );
        if ( v == l_true )
            return;
        if ( v == l_false )
            continue;
        kept.push_back( lits[ i ] );
    }

    if ( kept.empty() )
    {
        _ok = false;
        return;
    }
    if ( kept.size() == 1 )
    {
        enqueue( kept[ 0 ], no_reason );
        if ( propagate() != no_reason )
            _ok = false;
        return;
    }
    attach( std::move( kept ), false );
}

std::uint32_t cdcl_solver::attach( std::vector< std::uint32_t > lits, bool learnt )
{
    const auto cref = static_cast< std::uint32_t >( _clauses.size() );
    _watches[ lits[ 0 ] ].push_back( { cref, lits[ 1 ] } );
    _watches[ lits[ 1 ] ].push_back( { cref, lits[ 0 ] } );
    _clauses.push_back( { std::move( lits ), learnt, false, 0 } );
    if ( learnt )
        ++_num_learnts;
    return cref;
}

void cdcl_solver::enqueue( std::uint32_t lit, std::uint32_t reason )
{
    const auto v = lit >> 1;
    assert( _assigns[ v ] == l_undef );
    _assigns[ v ] = ( lit & 1u ) ? l_false : l_true;
    _level[ v ] = static_cast< std::uint32_t >( decision_level() );
    _reason[ v ] = reason;
    _trail.push_back( lit );
}

std::uint32_t cdcl_solver::propagate()
{
    while ( _qhead < _trail.size() )
    {
        const auto false_lit = _trail[ _qhead++ ] ^ 1u;
        auto& ws = _watches[ false_lit ];

        std::size_t i = 0;
        std::size_t j = 0;
        while ( i < ws.size() )
        {
            if ( lit_value( ws[ i ].blocker ) == l_true )
            {
                ws[ j++ ] = ws[ i++ ];
                continue;
            }

            const auto cref = ws[ i ].cref;
            auto& c = _clauses[ cref ].lits;
            if ( c[ 0 ] == false_lit )
                std::swap( c[ 0 ], c[ 1 ] );
            assert( c[ 1 ] == false_lit );

            const auto first = c[ 0 ];
            if ( first != ws[ i ].blocker && lit_value( first ) == l_true )
            {
                ws[ j++ ] = { cref, first };
                ++i;
                continue;
            }

            bool moved = false;
            for ( std::size_t k = 2; k < c.size(); ++k )
            {
                if ( lit_value( c[ k ] ) != l_false )
                {
                    std::swap( c[ 1 ], c[ k ] );
                    _watches[ c[ 1 ] ].push_back( { cref, first } );
                    moved = true;
                    break;
                }
            }
            if ( moved )
            {
                ++i;
                continue;
            }

            ws[ j++ ] = { cref, first };
            ++i;
            if ( lit_value( first ) == l_false )
            {
                while ( i < ws.size() )
                    ws[ j++ ] = ws[ i++ ];
                ws.resize( j );
                _qhead = _trail.size();
                return cref;
            }
            enqueue( first, cref );
        }
        ws.resize( j );
    }
    return no_reason;
}

void cdcl_solver::analyze( std::uint32_t confl, std::vector< std::uint32_t >& learnt, std::size_t& bt_level )
{
    learnt.clear();
    learnt.push_back( 0 ); // placeholder for the asserting literal

    int path = 0;
    std::uint32_t p = 0;
    bool have_p = false;
    auto index = _trail.size();
    auto to_clear = std::vector< std::uint32_t >{};

    do
    {
        auto& c = _clauses[ confl ];
        if ( c.learnt )
            bump_clause( c );

        for ( std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k )
        {
            const auto q = c.lits[ k ];
            const auto v = q >> 1;
            if ( _seen[ v ] || _level[ v ] == 0 )
                continue;
            _seen[ v ] = true;
            to_clear.push_back( v );
            bump_var( v );
            if ( _level[ v ] >= decision_level() )
                ++path;
            else
                learnt.push_back( q );
        }

        while ( !_seen[ _trail[ --index ] >> 1 ] )
        {
        }
        p = _trail[ index ];
        have_p = true;
        confl = _reason[ p >> 1 ];
        _seen[ p >> 1 ] = false;
        --path;

        // Reason clauses keep their implied literal in position 0.
        if ( path > 0 )
        {
            auto& rc = _clauses[ confl ].lits;
            if ( rc[ 0 ] != p )
            {
                const auto it = std::ranges::find( rc, p );
                std::iter_swap( rc.begin(), it );
            }
        }
    } while ( path > 0 );

    learnt[ 0 ] = p ^ 1u;

    // Local minimization: drop literals whose reason is subsumed by the clause.
    auto kept = std::size_t{ 1 };
    for ( std::size_t k = 1; k < learnt.size(); ++k )
    {
        const auto v = learnt[ k ] >> 1;
        const auto r = _reason[ v ];
        bool redundant = r != no_reason;
        if ( redundant )
        {
            for ( const auto q : _clauses[ r ].lits )
            {
                const auto qv = q >> 1;
                if ( qv != v && !_seen[ qv ] && _level[ qv ] > 0 )
                {
                    redundant = false;
                    break;
                }
            }
        }
        if ( !redundant )
            learnt[ kept++ ] = learnt[ k ];
    }
    learnt.resize( kept );

    bt_level = 0;
    if ( learnt.size() > 1 )
    {
        std::size_t max_i = 1;
        for ( std::size_t k = 2; k < learnt.size(); ++k )
            if ( _level[ learnt[ k ] >> 1 ] > _level[ learnt[ max_i ] >> 1 ] )
                max_i = k;
        std::swap( learnt[ 1 ], learnt[ max_i ] );
        bt_level = _level[ learnt[ 1 ] >> 1 ];
    }

    for ( const auto v : to_clear )
        _seen[ v ] = false;
}

// Marks the negations of the assumptions responsible for `lit`, the
// negation of a falsified assumption.
void cdcl_solver::analyze_final( std::uint32_t lit )
{
    std::fill( _failed.begin(), _failed.end(), false );
    _failed[ lit ] = true;
    if ( decision_level() == 0 )
        return;

    _seen[ lit >> 1 ] = true;
    for ( auto i = _trail.size(); i-- > _trail_lim[ 0 ]; )
    {
        const auto v = _trail[ i ] >> 1;
        if ( !_seen[ v ] )
            continue;
        const auto r = _reason[ v ];
        if ( r == no_reason )
        {
            // A decision below the assumption levels is an assumption itself.
            _failed[ _trail[ i ] ^ 1u ] = true;
        }
        else
        {
            for ( const auto q : _clauses[ r ].lits )
                if ( _level[ q >> 1 ] > 0 )
                    _seen[ q >> 1 ] = true;
        }
        _seen[ v ] = false;
    }
    _seen[ lit >> 1 ] = false;
}

bool cdcl_solver::failed( literal assumption ) const
{
    return assumption.code() < _failed.size() && _failed[ assumption.code() ];
}

void cdcl_solver::cancel_until( std::size_t level )
{
    if ( decision_level() <= level )
        return;
    for ( auto i = _trail.size(); i-- > _trail_lim[ level ]; )
    {
        const auto v = _trail[ i ] >> 1;
        _assigns[ v ] = l_undef;
        _reason[ v ] = no_reason;
        _polarity[ v ] = ( _trail[ i ] & 1u ) == 0;
        heap_insert( v );
    }
    _trail.resize( _trail_lim[ level ] );
    _trail_lim.resize( level );
    _qhead = _trail.size();
}

std::optional< std::uint32_t > cdcl_solver::pick_branch()
{
    while ( !_heap.empty() )
    {
        const auto v = heap_pop();
        if ( _assigns[ v ] == l_undef )
            return 2 * v + ( _polarity[ v ] ? 0u : 1u );
    }
    return std::nullopt;
}

status cdcl_solver::search( std::uint64_t conflict_limit, std::optional< std::uint64_t > budget_end )
{
    std::uint64_t conflicts = 0;
    auto learnt = std::vector< std::uint32_t >{};

    while ( true )
    {
        const auto confl = propagate();
        if ( confl != no_reason )
        {
            ++conflicts;
            ++_total_conflicts;
            if ( decision_level() == 0 )
            {
                _ok = false;
                return status::unsat;
            }

            std::size_t bt_level = 0;
            analyze( confl, learnt, bt_level );
            cancel_until( bt_level );
            if ( learnt.size() == 1 )
                enqueue( learnt[ 0 ], no_reason );
            else
            {
                const auto cref = attach( learnt, true );
                bump_clause( _clauses[ cref ] );
                enqueue( learnt[ 0 ], cref );
            }
            _var_inc /= var_decay;
            _cla_inc /= clause_decay;
            continue;
        }

        if ( budget_end && _total_conflicts >= *budget_end )
        {
            cancel_until( 0 );
            return status::unknown;
        }
        if ( conflicts >= conflict_limit )
        {
            cancel_until( 0 );
            return status::unknown; // restart
        }

        std::optional< std::uint32_t > next;
        while ( decision_level() < _assumptions.size() )
        {
            const auto p = _assumptions[ decision_level() ];
            const auto v = lit_value( p );
            if ( v == l_true )
            {
                _trail_lim.push_back( _trail.size() );
            }
            else if ( v == l_false )
            {
                analyze_final( p ^ 1u );
                // analyze_final marks the negation; flip to the assumption itself.
                auto core = std::vector< bool >( _failed.size(), false );
                for ( std::size_t code = 0; code < _failed.size(); ++code )
                    if ( _failed[ code ] )
                        core[ code ^ 1u ] = true;
                _failed = std::move( core );
                return status::unsat;
            }
            else
            {
                next = p;
                break;
            }
        }

        if ( !next )
        {
            next = pick_branch();
            if ( !next )
                return status::sat;
        }
        _trail_lim.push_back( _trail.size() );
        enqueue( *next, no_reason );
    }
}

status cdcl_solver::solve( std::span< const literal > assumptions, std::optional< std::uint64_t > budget )
{
    std::fill( _failed.begin(), _failed.end(), false );
    if ( !_ok )
        return status::unsat;

    cancel_until( 0 );
    _assumptions.clear();
    for ( const auto a : assumptions )
    {
        while ( a.variable().index() >= num_vars() )
            new_var();
        _assumptions.push_back( a.code() );
    }

    if ( _num_learnts > _max_learnts )
        reduce_learnts();

    const auto budget_end = budget ? std::optional< std::uint64_t >( _total_conflicts + *budget ) : std::nullopt;

    for ( std::uint64_t restarts = 0;; ++restarts )
    {
        const auto limit = static_cast< std::uint64_t >( luby( restarts ) * restart_base );
        const auto result = search( limit, budget_end );

        if ( result == status::sat )
        {
            for ( std::size_t v = 0; v < num_vars(); ++v )
                _model[ v ] = _assigns[ v ] == l_true;
            cancel_until( 0 );
            return status::sat;
        }
        if ( result == status::unsat )
        {
            if ( !_ok )
                std::fill( _failed.begin(), _failed.end(), false );
            cancel_until( 0 );
            return status::unsat;
        }
        if ( budget_end && _total_conflicts >= *budget_end )
            return status::unknown;
    }
}

void cdcl_solver::reduce_learnts()
{
    assert( decision_level() == 0 );

    auto learnts = std::vector< std::uint32_t >{};
    for ( std::uint32_t i = 0; i < _clauses.size(); ++i )
        if ( _clauses[ i ].learnt && !_clauses[ i ].deleted )
            learnts.push_back( i );
    std::ranges::stable_sort( learnts, [ & ]( std::uint32_t a, std::uint32_t b ) {
        return _clauses[ a ].activity < _clauses[ b ].activity;
    } );
    for ( std::size_t i = 0; i < learnts.size() / 2; ++i )
    {
        auto& c = _clauses[ learnts[ i ] ];
        if ( c.lits.size() > 2 )
        {
            c.deleted = true;
            c.lits.clear();
            c.lits.shrink_to_fit();
            --_num_learnts;
        }
    }

    // Reasons at level 0 are never consulted by conflict analysis.
    for ( const auto lit : _trail )
        _reason[ lit >> 1 ] = no_reason;
    for ( auto& ws : _watches )
        std::erase_if( ws, [ & ]( const watcher& w ) { return _clauses[ w.cref ].deleted; } );

    _max_learnts += _max_learnts / 10;
}

void cdcl_solver::bump_var( std::uint32_t v )
{
    _activity[ v ] += _var_inc;
    if ( _activity[ v ] > 1e100 )
    {
        for ( auto& a : _activity )
            a *= 1e-100;
        _var_inc *= 1e-100;
    }
    if ( _heap_index[ v ] >= 0 )
        heap_up( static_cast< std::size_t >( _heap_index[ v ] ) );
}

void cdcl_solver::bump_clause( clause_data& c )
{
    c.activity += _cla_inc;
    if ( c.activity > 1e20 )
    {
        for ( auto& other : _clauses )
            other.activity *= 1e-20;
        _cla_inc *= 1e-20;
    }
}

void cdcl_solver::heap_insert( std::uint32_t v )
{
    if ( _heap_index[ v ] >= 0 )
        return;
    _heap_index[ v ] = static_cast< std::int64_t >( _heap.size() );
    _heap.push_back( v );
    heap_up( _heap.size() - 1 );
}

void cdcl_solver::heap_up( std::size_t i )
{
    const auto v = _heap[ i ];
    while ( i > 0 )
    {
        const auto parent = ( i - 1 ) / 2;
        if ( _activity[ _heap[ parent ] ] >= _activity[ v ] )
            break;
        _heap[ i ] = _heap[ parent ];
        _heap_index[ _heap[ i ] ] = static_cast< std::int64_t >( i );
        i = parent;
    }
    _heap[ i ] = v;
    _heap_index[ v ] = static_cast< std::int64_t >( i );
}

void cdcl_solver::heap_down( std::size_t i )
{
    const auto v = _heap[ i ];
    while ( true )
    {
        auto child = 2 * i + 1;
        if ( child >= _heap.size() )
            break;
        if ( child + 1 < _heap.size() && _activity[ _heap[ child + 1 ] ] > _activity[ _heap[ child ] ] )
            ++child;
        if ( _activity[ _heap[ child ] ] <= _activity[ v ] )
            break;
        _heap[ i ] = _heap[ child ];
        _heap_index[ _heap[ i ] ] = static_cast< std::int64_t >( i );
        i = child;
    }
    _heap[ i ] = v;
    _heap_index[ v ] = static_cast< std::int64_t >( i );
}

std::uint32_t cdcl_solver::heap_pop()
{
    const auto top = _heap.front();
    _heap_index[ top ] = -1;
    const auto last = _heap.back();
    _heap.pop_back();
    if ( !_heap.empty() )
    {
        _heap[ 0 ] = last;
        _heap_index[ last ] = 0;
        heap_down( 0 );
    }
    return top;
}

solver_handle::solver_handle( std::size_t reserved_vars, std::uint64_t seed, bool record_clauses )
    : solver_handle( std::make_unique< cdcl_solver >( seed ), reserved_vars, record_clauses )
{
}

solver_handle::solver_handle( std::unique_ptr< incremental_solver > backend, std::size_t reserved_vars,
                              bool record_clauses )
    : _solver{ std::move( backend ) }, _record{ record_clauses }
{
    while ( _solver->num_vars() < reserved_vars )
        _solver->new_var();
}

void solver_handle::add_clause( std::span< const literal > lits, std::optional< std::size_t > tag )
{
    auto cl = std::vector< literal >( lits.begin(), lits.end() );
    if ( tag )
        cl.push_back( !activation( *tag ) );
    if ( _record )
        _db.push_back( cl );
    _solver->add_clause( cl );
}

literal solver_handle::activation( std::size_t frame )
{
    const auto it = _activation.find( frame );
    if ( it != _activation.end() )
        return it->second;
    const auto act = literal{ _solver->new_var() };
    _activation.emplace( frame, act );
    return act;
}

literal solver_handle::add_temporary( std::span< const literal > lits )
{
    const auto act = literal{ _solver->new_var() };
    auto cl = std::vector< literal >( lits.begin(), lits.end() );
    cl.push_back( !act );
    if ( _record )
        _db.push_back( cl );
    _solver->add_clause( cl );
    return act;
}

void solver_handle::retire( literal act )
{
    const auto unit = std::vector< literal >{ !act };
    if ( _record )
        _db.push_back( unit );
    _solver->add_clause( unit );
}

sat_result solver_handle::solve( std::span< const literal > assumptions, std::optional< std::uint64_t > budget )
{
    auto result = sat_result{};
    result.outcome = _solver->solve( assumptions, budget );
    if ( result.outcome == status::sat )
    {
        result.model.resize( _solver->num_vars() );
        for ( std::uint32_t v = 0; v < _solver->num_vars(); ++v )
            result.model[ v ] = _solver->value( var{ v } );
    }
    else if ( result.outcome == status::unsat )
    {
        for ( const auto a : assumptions )
            if ( _solver->failed( a ) && std::ranges::find( result.core, a ) == result.core.end() )
                result.core.push_back( a );
    }
    return result;
}

void solver_handle::dump_dimacs( std::ostream& out ) const
{
    out << "p cnf " << _solver->num_vars() << ' ' << _db.size() << '\n';
    for ( const auto& cl : _db )
    {
        for ( const auto lit : cl )
            out << to_string( lit ) << ' ';
        out << "0\n";
    }
}

state extract_state( const std::vector< bool >& model, copy which, std::size_t num_latches )
{
    const auto offset = which == copy::current ? 0 : num_latches;
    auto values = std::vector< bool >( num_latches );
    for ( std::size_t i = 0; i < num_latches; ++i )
        values[ i ] = model[ offset + i ];
    return state{ std::move( values ) };
}

} // namespace ic4::sat
