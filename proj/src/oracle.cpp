#include "ic4/oracle.hpp"

#include "ic4/sat.hpp"

#include <ostream>

namespace ic4::oracle
{

std::optional< std::uint32_t > reach_map::depth( const state& s ) const
{
    if ( s.size() != _num_latches || s.size() > 64 )
        return std::nullopt;
    const auto it = _depth.find( s.pack() );
    if ( it == _depth.end() )
        return std::nullopt;
    return it->second;
}

std::vector< state > reach_map::states() const
{
    auto out = std::vector< state >{};
    out.reserve( _order.size() );
    for ( const auto bits : _order )
        out.push_back( state::unpack( bits, _num_latches ) );
    return out;
}

std::vector< std::size_t > reach_map::histogram() const
{
    auto out = std::vector< std::size_t >( _order.empty() ? 0 : _diameter + 1, 0 );
    for ( const auto bits : _order )
        ++out[ _depth.at( bits ) ];
    return out;
}

reach_map bfs( const transition_system& ts, std::size_t max_states )
{
    auto rm = reach_map{};
    rm._num_latches = ts.num_latches();
    if ( ts.num_latches() > 64 || ts.num_inputs() > 20 )
    {
        rm._truncated = true;
        return rm;
    }

    const auto init = ts.init_state().pack();
    rm._depth.emplace( init, 0 );
    rm._order.push_back( init );

    const auto num_inputs = ts.num_inputs();
    const auto input_vectors = std::uint64_t{ 1 } << num_inputs;
    auto inputs = std::vector< bool >( num_inputs );

    for ( std::size_t head = 0; head < rm._order.size(); ++head )
    {
        const auto bits = rm._order[ head ];
        const auto d = rm._depth.at( bits );
        const auto s = state::unpack( bits, ts.num_latches() );

        for ( std::uint64_t x = 0; x < input_vectors; ++x )
        {
            for ( std::size_t i = 0; i < num_inputs; ++i )
                inputs[ i ] = ( ( x >> i ) & 1u ) != 0;
            const auto succ = ts.step( s, inputs ).pack();
            if ( rm._depth.contains( succ ) )
                continue;
            if ( rm._order.size() >= max_states )
            {
                rm._truncated = true;
                return rm;
            }
            rm._depth.emplace( succ, d + 1 );
            rm._order.push_back( succ );
            rm._diameter = std::max( rm._diameter, d + 1 );
        }
    }
    return rm;
}

oracle_result oracle_verdict( const transition_system& ts, const reach_map& rm )
{
    // Discovery order is by depth, so the first bad state is a shallowest one.
    for ( const auto& s : rm.states() )
        if ( ts.is_bad( s ) )
            return verdict_unsafe{ *rm.depth( s ) };
    if ( rm.truncated() )
        return verdict_inconclusive{};
    return verdict_safe{};
}

bool holds_in( const transition_system& ts, const invariant& inv, const state& s )
{
    if ( inv.includes_property && ts.is_bad( s ) )
        return false;
    for ( const auto& cl : inv.clauses )
        if ( !satisfies( s, cl ) )
            return false;
    return true;
}

namespace
{

void load( sat::solver_handle& solver, const cnf& clauses )
{
    for ( const auto& cl : clauses )
        solver.add_clause( cl );
}

} // namespace

check_result certify_invariant( const transition_system& ts, const invariant& inv )
{
    const auto latches = ts.num_latches();
    const auto& bad = ts.bad_current();
    const auto& bad_next = ts.bad_next();

    // Initiation.
    {
        auto solver = sat::solver_handle{ ts.num_vars() };
        load( solver, ts.init() );
        load( solver, ts.prop_defs() );
        for ( const auto& cl : inv.clauses )
        {
            const auto negation = negate_clause( cl );
            const auto r = solver.solve( negation.literals() );
            if ( r.is_sat() )
                return check_failure{ "initial state violates clause " + to_string( cl ),
                                      sat::extract_state( r.model, sat::copy::current, latches ) };
        }
        if ( inv.includes_property && bad )
        {
            const auto r = solver.solve( std::vector< literal >{ *bad } );
            if ( r.is_sat() )
                return check_failure{ "initial state violates the property",
                                      sat::extract_state( r.model, sat::copy::current, latches ) };
        }
    }

    // Consecution.
    {
        auto solver = sat::solver_handle{ ts.num_vars() };
        load( solver, ts.trans() );
        load( solver, ts.prop_defs() );
        for ( const auto& cl : inv.clauses )
            solver.add_clause( cl.literals() );
        if ( inv.includes_property && bad )
            solver.add_clause( { !*bad } );

        for ( const auto& cl : inv.clauses )
        {
            auto assumptions = std::vector< literal >{};
            for ( const auto lit : cl )
                assumptions.push_back( !ts.prime( lit ) );
            const auto r = solver.solve( assumptions );
            if ( r.is_sat() )
                return check_failure{ "clause " + to_string( cl ) + " is not inductive",
                                      sat::extract_state( r.model, sat::copy::current, latches ) };
        }
        if ( inv.includes_property && bad_next )
        {
            const auto r = solver.solve( std::vector< literal >{ *bad_next } );
            if ( r.is_sat() )
                return check_failure{ "property is not preserved by the invariant",
                                      sat::extract_state( r.model, sat::copy::current, latches ) };
        }
    }

    // Safety.
    if ( bad && !inv.includes_property )
    {
        auto solver = sat::solver_handle{ ts.num_vars() };
        load( solver, ts.prop_defs() );
        for ( const auto& cl : inv.clauses )
            solver.add_clause( cl.literals() );
        const auto r = solver.solve( std::vector< literal >{ *bad } );
        if ( r.is_sat() )
            return check_failure{ "invariant does not imply the property",
                                  sat::extract_state( r.model, sat::copy::current, latches ) };
    }

    return std::nullopt;
}

check_result check_invariant( const transition_system& ts, const invariant& inv, const reach_map& rm )
{
    for ( const auto& s : rm.states() )
        if ( !holds_in( ts, inv, s ) )
            return check_failure{ "reachable state " + to_string( s ) + " violates the invariant", s };
    return certify_invariant( ts, inv );
}

std::optional< std::size_t > validate_trace( const transition_system& ts, const trace& t )
{
    return first_invalid_step( ts, t );
}

void write_histogram_csv( std::ostream& out, const reach_map& rm )
{
    out << "depth,states\n";
    const auto h = rm.histogram();
    for ( std::size_t d = 0; d < h.size(); ++d )
        out << d << ',' << h[ d ] << '\n';
}

} // namespace ic4::oracle
