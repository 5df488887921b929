#include "ic4/reach_store.hpp"

#include <algorithm>
#include <stdexcept>

namespace ic4
{

void reach_store::seed( const transition_system& ts )
{
    if ( covers( ts.init_state() ) )
        return;
    insert( ts, ts.init_state(), std::nullopt, {} );
    ++_seeded;
}

std::size_t reach_store::insert( const transition_system& ts, const state& s, std::optional< std::size_t > pred,
                                 const std::vector< bool >& input )
{
    if ( !pred && !ts.is_initial( s ) )
        throw std::logic_error( "reach store: depth-0 state " + to_string( s ) + " is not initial" );
    if ( pred && ts.step( _entries[ *pred ].s, input ) != s )
        throw std::logic_error( "reach store: " + to_string( s ) + " is not a successor of " +
                                to_string( _entries[ *pred ].s ) );

    const auto depth = pred ? _entries[ *pred ].depth + 1 : 0;
    _entries.push_back( { s, depth, pred, input } );
    _index.emplace( s, _entries.size() - 1 );
    return _entries.size() - 1;
}

std::size_t reach_store::add_trace( const transition_system& ts, const trace& t )
{
    if ( t.states.empty() || t.states.size() != t.inputs.size() + 1 )
        throw std::logic_error( "reach store: malformed trace" );

    std::optional< std::size_t > cur;
    for ( std::size_t j = 0; j < t.states.size(); ++j )
    {
        if ( const auto hit = covers( t.states[ j ] ) )
        {
            if ( j > 0 && ts.step( t.states[ j - 1 ], t.inputs[ j - 1 ] ) != t.states[ j ] )
                throw std::logic_error( "reach store: trace step " + std::to_string( j ) + " is invalid" );
            cur = *hit;
            continue;
        }
        cur = insert( ts, t.states[ j ], cur, j == 0 ? std::vector< bool >{} : t.inputs[ j - 1 ] );
    }
    return *cur;
}

std::optional< std::size_t > reach_store::covers( const state& s ) const
{
    const auto it = _index.find( s );
    if ( it == _index.end() )
        return std::nullopt;
    return it->second;
}

std::optional< std::size_t > reach_store::find_falsifying( const clause& cl, std::size_t max_depth ) const
{
    for ( std::size_t i = 0; i < _entries.size(); ++i )
        if ( _entries[ i ].depth <= max_depth && !satisfies( _entries[ i ].s, cl ) )
            return i;
    return std::nullopt;
}

trace reach_store::trace_to( std::size_t index ) const
{
    auto chain = std::vector< std::size_t >{};
    for ( std::optional< std::size_t > cur = index; cur; cur = _entries[ *cur ].pred )
        chain.push_back( *cur );
    std::ranges::reverse( chain );

    auto t = trace{};
    for ( std::size_t j = 0; j < chain.size(); ++j )
    {
        t.states.push_back( _entries[ chain[ j ] ].s );
        if ( j > 0 )
            t.inputs.push_back( _entries[ chain[ j ] ].input );
    }
    return t;
}

} // namespace ic4
