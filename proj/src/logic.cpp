#include "ic4/logic.hpp"

#include <sstream>

namespace ic4
{

std::string to_string( literal lit )
{
    const auto n = static_cast< long long >( lit.variable().index() ) + 1;
    return std::to_string( lit.negative() ? -n : n );
}

namespace detail
{

std::vector< literal > canonicalize( std::vector< literal > lits )
{
    std::ranges::sort( lits );
    const auto [ first, last ] = std::ranges::unique( lits );
    lits.erase( first, last );

    for ( std::size_t i = 1; i < lits.size(); ++i )
    {
        if ( lits[ i ].variable() == lits[ i - 1 ].variable() )
            throw tautology_error( "complementary literals on variable " +
                                   std::to_string( lits[ i ].variable().index() ) );
    }

    return lits;
}

} // namespace detail

clause clause::without( std::size_t pos ) const
{
    auto lits = _literals;
    lits.erase( lits.begin() + static_cast< std::ptrdiff_t >( pos ) );
    return clause{ std::move( lits ), trusted{} };
}

clause cube::negate() const
{
    auto lits = _literals;
    for ( auto& lit : lits )
        lit = !lit;
    // Flipping polarity keeps the variable order, so the result stays canonical.
    return clause{ std::move( lits ), clause::trusted{} };
}

clause negate_cube( const cube& c )
{
    return c.negate();
}

cube negate_clause( const clause& c )
{
    auto lits = std::vector< literal >( c.begin(), c.end() );
    for ( auto& lit : lits )
        lit = !lit;
    return cube{ std::move( lits ) };
}

bool state::value( var v ) const
{
    if ( v.index() >= _values.size() )
        throw domain_error( "variable " + std::to_string( v.index() ) + " is not a state variable of a " +
                            std::to_string( _values.size() ) + "-latch state" );
    return _values[ v.index() ];
}

std::uint64_t state::pack() const
{
    std::uint64_t bits = 0;
    for ( std::size_t i = 0; i < _values.size(); ++i )
        if ( _values[ i ] )
            bits |= std::uint64_t{ 1 } << i;
    return bits;
}

state state::unpack( std::uint64_t bits, std::size_t size )
{
    auto values = std::vector< bool >( size );
    for ( std::size_t i = 0; i < size; ++i )
        values[ i ] = ( ( bits >> i ) & 1u ) != 0;
    return state{ std::move( values ) };
}

cube state_to_cube( const state& s )
{
    auto lits = std::vector< literal >{};
    lits.reserve( s.size() );
    for ( std::size_t i = 0; i < s.size(); ++i )
        lits.emplace_back( var{ static_cast< std::uint32_t >( i ) }, !s[ i ] );
    return cube{ std::move( lits ) };
}

bool satisfies( const state& s, const clause& cl )
{
    bool result = false;
    // Check the whole clause so that a domain mismatch is never masked.
    for ( const auto lit : cl )
        if ( lit.holds( s.value( lit.variable() ) ) )
            result = true;
    return result;
}

bool satisfies( const state& s, const cube& c )
{
    bool result = true;
    for ( const auto lit : c )
        if ( !lit.holds( s.value( lit.variable() ) ) )
            result = false;
    return result;
}

namespace
{

template < typename Range >
std::string join_literals( const Range& lits, const char* sep )
{
    auto out = std::ostringstream{};
    bool first = true;
    for ( const auto lit : lits )
    {
        if ( !first )
            out << sep;
        out << to_string( lit );
        first = false;
    }
    return out.str();
}

} // namespace

std::string to_string( const clause& cl )
{
    return "(" + join_literals( cl, " | " ) + ")";
}

std::string to_string( const cube& c )
{
    return "[" + join_literals( c, " & " ) + "]";
}

std::string to_string( const state& s )
{
    auto out = std::string{};
    for ( std::size_t i = 0; i < s.size(); ++i )
        out += s[ i ] ? '1' : '0';
    return out;
}

} // namespace ic4
