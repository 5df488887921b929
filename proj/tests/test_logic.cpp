#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace ic4;
using ic4::test::make_state;
using ic4::test::neg;
using ic4::test::pos;

TEST_CASE( "literal negation is an involution" )
{
    for ( std::uint32_t v = 0; v < 8; ++v )
    {
        CHECK( ( !!pos( v ) ) == pos( v ) );
        CHECK( ( !pos( v ) ) == neg( v ) );
        CHECK( pos( v ).variable() == neg( v ).variable() );
    }
}

TEST_CASE( "clauses are canonical and reject tautologies" )
{
    const auto a = clause{ pos( 2 ), neg( 0 ), pos( 1 ), neg( 0 ) };
    REQUIRE( a.size() == 3 );
    CHECK( a == clause{ neg( 0 ), pos( 1 ), pos( 2 ) } );
    CHECK( to_string( a ) == to_string( clause{ std::vector< literal >( a.begin(), a.end() ) } ) );

    CHECK_THROWS_AS( ( clause{ pos( 0 ), neg( 0 ) } ), tautology_error );
    CHECK_THROWS_AS( ( cube{ pos( 3 ), neg( 3 ) } ), tautology_error );
}

TEST_CASE( "negate_cube" )
{
    SECTION( "polarity flip" )
    {
        CHECK( negate_cube( cube{ pos( 0 ), neg( 1 ) } ) == clause{ neg( 0 ), pos( 1 ) } );
    }
    SECTION( "empty cube gives the empty clause" )
    {
        const auto cl = negate_cube( cube{} );
        CHECK( cl.empty() );
        CHECK_FALSE( satisfies( make_state( { 0, 1 } ), cl ) );
    }
    SECTION( "involution" )
    {
        const auto c = cube{ pos( 0 ) };
        CHECK( negate_cube( c ) == clause{ neg( 0 ) } );
        CHECK( negate_clause( negate_cube( c ) ) == c );
    }
}

TEST_CASE( "state_to_cube" )
{
    CHECK( state_to_cube( make_state( { 1, 0 } ) ) == cube{ pos( 0 ), neg( 1 ) } );
    CHECK( state_to_cube( make_state( { 0 } ) ) == cube{ neg( 0 ) } );
    CHECK( state_to_cube( make_state( { 1, 1, 1 } ) ) == cube{ pos( 0 ), pos( 1 ), pos( 2 ) } );
}

TEST_CASE( "satisfies" )
{
    const auto cl = clause{ neg( 0 ), neg( 1 ) };
    CHECK( satisfies( make_state( { 1, 0 } ), cl ) );
    CHECK_FALSE( satisfies( make_state( { 1, 1 } ), cl ) );
    CHECK_FALSE( satisfies( make_state( { 0, 0 } ), clause{} ) );

    SECTION( "domain mismatch is an error, not false" )
    {
        CHECK_THROWS_AS( satisfies( make_state( { 1 } ), clause{ neg( 0 ), pos( 4 ) } ), domain_error );
    }
}

TEST_CASE( "subsumes" )
{
    CHECK( subsumes( clause{ neg( 0 ) }, clause{ neg( 0 ), pos( 1 ) } ) );
    CHECK_FALSE( subsumes( clause{ neg( 0 ), pos( 1 ) }, clause{ neg( 0 ) } ) );
    CHECK( subsumes( clause{ neg( 0 ), pos( 1 ) }, clause{ neg( 0 ), pos( 1 ) } ) );
}

namespace
{

clause random_clause( std::mt19937& rng, std::uint32_t vars )
{
    auto lits = std::vector< literal >{};
    for ( std::uint32_t v = 0; v < vars; ++v )
    {
        const auto pick = rng() % 3;
        if ( pick == 1 )
            lits.push_back( pos( v ) );
        else if ( pick == 2 )
            lits.push_back( neg( v ) );
    }
    return clause{ std::move( lits ) };
}

} // namespace

TEST_CASE( "a state satisfies the negation of a cube exactly when it is outside the cube" )
{
    auto rng = std::mt19937{ 7 };
    for ( int round = 0; round < 500; ++round )
    {
        const auto c = negate_clause( random_clause( rng, 5 ) );
        const auto s = state::unpack( rng() % 32, 5 );
        CHECK( satisfies( s, negate_cube( c ) ) != satisfies( s, c ) );
    }
}

TEST_CASE( "subsumption is reflexive and transitive on random clauses" )
{
    auto rng = std::mt19937{ 11 };
    auto corpus = std::vector< clause >{};
    for ( int i = 0; i < 60; ++i )
        corpus.push_back( random_clause( rng, 4 ) );

    for ( const auto& a : corpus )
    {
        CHECK( subsumes( a, a ) );
        for ( const auto& b : corpus )
            for ( const auto& c : corpus )
                if ( subsumes( a, b ) && subsumes( b, c ) )
                    CHECK( subsumes( a, c ) );
    }
}

TEST_CASE( "state packing keeps latch i at bit i" )
{
    const auto s = make_state( { 1, 0, 1 } );
    CHECK( s.pack() == 0b101u );
    CHECK( state::unpack( 0b101u, 3 ) == s );
    CHECK( to_string( s ) == "101" );
    CHECK_THROWS_AS( s.value( var{ 3 } ), domain_error );
}
