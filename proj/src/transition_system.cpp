#include "ic4/transition_system.hpp"

#include <cassert>
#include <ostream>

namespace ic4
{

transition_system::transition_system( parts p ) : _p{ std::move( p ) }
{
    assert( _p.init_values.size() == _p.num_latches );
    assert( _p.next_functions.size() == _p.num_latches );
    _init_state = state{ _p.init_values };
}

var_role transition_system::role( var v ) const
{
    const auto i = v.index();
    const auto latches = _p.num_latches;
    if ( i < latches )
        return var_role::state_current;
    if ( i < 2 * latches )
        return var_role::state_next;
    if ( i < 2 * latches + _p.num_inputs )
        return var_role::input;
    return var_role::auxiliary;
}

literal transition_system::prime( literal lit ) const
{
    assert( role( lit.variable() ) == var_role::state_current );
    return lit.substitute( next_var( lit.variable().index() ) );
}

literal transition_system::unprime( literal lit ) const
{
    assert( role( lit.variable() ) == var_role::state_next );
    return lit.substitute( latch_var( lit.variable().index() - _p.num_latches ) );
}

std::vector< literal > transition_system::prime( std::span< const literal > lits ) const
{
    auto out = std::vector< literal >{};
    out.reserve( lits.size() );
    for ( const auto lit : lits )
        out.push_back( prime( lit ) );
    return out;
}

cnf transition_system::property() const
{
    auto p = _p.prop_defs;
    if ( _p.bad_current )
        p.push_back( { !*_p.bad_current } );
    return p;
}

bool transition_system::intersects_init( const cube& c ) const
{
    return satisfies( _init_state, c );
}

bool transition_system::init_implies( const clause& cl ) const
{
    return satisfies( _init_state, cl );
}

namespace
{

bool value_of( const std::vector< bool >& values, literal lit )
{
    return lit.holds( values[ lit.variable().index() ] );
}

void evaluate( std::vector< bool >& values, const std::vector< and_gate >& gates )
{
    for ( const auto& g : gates )
        values[ g.out.index() ] = value_of( values, g.a ) && value_of( values, g.b );
}

} // namespace

state transition_system::step( const state& s, const std::vector< bool >& inputs ) const
{
    assert( s.size() == _p.num_latches && inputs.size() == _p.num_inputs );

    auto values = std::vector< bool >( _p.num_vars, false );
    for ( std::size_t i = 0; i < _p.num_latches; ++i )
        values[ i ] = s[ i ];
    for ( std::size_t i = 0; i < _p.num_inputs; ++i )
        values[ input_var( i ).index() ] = inputs[ i ];
    evaluate( values, _p.trans_gates );

    auto next = std::vector< bool >( _p.num_latches );
    for ( std::size_t i = 0; i < _p.num_latches; ++i )
    {
        const auto& f = _p.next_functions[ i ];
        next[ i ] = f.constant ? f.value : value_of( values, f.lit );
    }
    return state{ std::move( next ) };
}

bool transition_system::is_bad( const state& s ) const
{
    if ( !_p.bad_current )
        return false;
    if ( _p.bad_always )
        return true;

    auto values = std::vector< bool >( _p.num_vars, false );
    for ( std::size_t i = 0; i < _p.num_latches; ++i )
        values[ i ] = s[ i ];
    evaluate( values, _p.prop_gates );
    return value_of( values, *_p.bad_current );
}

namespace
{

void write_clauses( std::ostream& out, const cnf& clauses )
{
    for ( const auto& cl : clauses )
    {
        for ( const auto lit : cl )
            out << to_string( lit ) << ' ';
        out << "0\n";
    }
}

} // namespace

void write_dimacs( std::ostream& out, const transition_system& ts )
{
    const auto prop = ts.property();
    out << "c model " << ( ts.name().empty() ? "<unnamed>" : ts.name() ) << '\n';
    for ( std::uint32_t v = 0; v < ts.num_vars(); ++v )
    {
        out << "c var " << v + 1 << " = ";
        const auto latches = static_cast< std::uint32_t >( ts.num_latches() );
        switch ( ts.role( var{ v } ) )
        {
            case var_role::state_current: out << "latch " << v << " current"; break;
            case var_role::state_next: out << "latch " << v - latches << " next"; break;
            case var_role::input: out << "input " << v - 2 * latches; break;
            case var_role::auxiliary: out << "aux"; break;
        }
        out << '\n';
    }
    out << "p cnf " << ts.num_vars() << ' ' << ts.init().size() + ts.trans().size() + prop.size() << '\n';
    out << "c init\n";
    write_clauses( out, ts.init() );
    out << "c trans\n";
    write_clauses( out, ts.trans() );
    out << "c prop\n";
    write_clauses( out, prop );
}

} // namespace ic4
