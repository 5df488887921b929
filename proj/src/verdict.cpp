#include "ic4/verdict.hpp"

namespace ic4
{

const char* verdict_name( const verdict& v )
{
    if ( is_safe( v ) )
        return "SAFE";
    if ( is_unsafe( v ) )
        return "UNSAFE";
    return "UNKNOWN";
}

trace simulate_trace( const transition_system& ts, const state& start,
                      const std::vector< std::vector< bool > >& inputs )
{
    auto t = trace{};
    t.states.push_back( start );
    for ( const auto& x : inputs )
    {
        t.states.push_back( ts.step( t.states.back(), x ) );
        t.inputs.push_back( x );
    }
    return t;
}

std::optional< std::size_t > first_invalid_step( const transition_system& ts, const trace& t )
{
    if ( t.states.empty() || t.states.size() != t.inputs.size() + 1 )
        return 0;
    if ( t.states[ 0 ].size() != ts.num_latches() || !ts.is_initial( t.states[ 0 ] ) )
        return 0;
    for ( std::size_t j = 0; j < t.inputs.size(); ++j )
    {
        if ( t.inputs[ j ].size() != ts.num_inputs() || t.states[ j + 1 ].size() != ts.num_latches() )
            return j + 1;
        if ( ts.step( t.states[ j ], t.inputs[ j ] ) != t.states[ j + 1 ] )
            return j + 1;
    }
    return std::nullopt;
}

} // namespace ic4
