#pragma once

#include "ic4/aiger.hpp"
#include "ic4/logic.hpp"
#include "ic4/transition_system.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace ic4::test
{

inline transition_system load_fixture( const std::string& name )
{
    return aiger::encode( aiger::read_aag_file( std::string{ IC4_FIXTURE_DIR } + "/" + name + ".aag" ), name );
}

// Literal over latch / variable index v.
inline literal pos( std::uint32_t v ) { return literal{ var{ v } }; }
inline literal neg( std::uint32_t v ) { return literal{ var{ v }, true }; }

// Values in latch order: make_state( { 1, 0 } ) is l0 = 1, l1 = 0.
inline state make_state( std::initializer_list< int > bits )
{
    auto values = std::vector< bool >{};
    for ( const auto b : bits )
        values.push_back( b != 0 );
    return state{ std::move( values ) };
}

} // namespace ic4::test
