#include "cnf_oracle.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace ic4;
using ic4::test::neg;
using ic4::test::pos;

TEST_CASE( "untagged clause contradicting an assumption" )
{
    auto h = sat::solver_handle{ 2 };
    h.add_clause( { neg( 0 ) } );
    const auto r = h.solve( std::vector< literal >{ pos( 0 ) } );
    REQUIRE( r.is_unsat() );
    CHECK( r.core == std::vector< literal >{ pos( 0 ) } );
}

TEST_CASE( "tagged clause is inactive unless its frame is assumed" )
{
    auto h = sat::solver_handle{ 2 };
    h.add_clause( { pos( 0 ), pos( 1 ) }, 2 );
    CHECK( h.solve( std::vector< literal >{ neg( 0 ), neg( 1 ) } ).is_sat() );

    const auto act = h.activation( 2 );
    const auto r = h.solve( std::vector< literal >{ neg( 0 ), neg( 1 ), act } );
    REQUIRE( r.is_unsat() );
    CHECK( std::ranges::find( r.core, act ) != r.core.end() );
}

TEST_CASE( "empty clause makes every query UNSAT with an empty core" )
{
    auto h = sat::solver_handle{ 2 };
    h.add_clause( std::vector< literal >{} );
    for ( int i = 0; i < 2; ++i )
    {
        const auto r = h.solve( std::vector< literal >{ pos( 1 ) } );
        CHECK( r.is_unsat() );
        CHECK( r.core.empty() );
    }
}

TEST_CASE( "small solve examples" )
{
    auto h = sat::solver_handle{ 2 };
    h.add_clause( { pos( 0 ), pos( 1 ) } );
    h.add_clause( { neg( 0 ), pos( 1 ) } );
    CHECK( h.solve( std::vector< literal >{ neg( 1 ) } ).is_unsat() );
    const auto r = h.solve( {} );
    REQUIRE( r.is_sat() );
    CHECK( r.value( var{ 1 } ) );

    auto empty = sat::solver_handle{ 1 };
    const auto e = empty.solve( std::vector< literal >{ pos( 0 ) } );
    REQUIRE( e.is_sat() );
    CHECK( e.value( var{ 0 } ) );
}

TEST_CASE( "extract_state projects the requested copy" )
{
    // l0, l1, l0', l1'
    const auto model = std::vector< bool >{ true, false, false, true };
    CHECK( sat::extract_state( model, sat::copy::next, 2 ) == test::make_state( { 0, 1 } ) );
    CHECK( sat::extract_state( model, sat::copy::current, 2 ) == test::make_state( { 1, 0 } ) );

    auto h = sat::solver_handle{ 4 };
    h.add_clause( { pos( 0 ) } );
    const auto r = h.solve( {} );
    REQUIRE( r.is_sat() );
    CHECK( sat::extract_state( r.model, sat::copy::next, 2 ).size() == 2 );
}

namespace
{

// n + 1 pigeons into n holes.
void add_pigeonhole( sat::solver_handle& h, std::uint32_t holes )
{
    const auto p = [ & ]( std::uint32_t pigeon, std::uint32_t hole ) { return pos( pigeon * holes + hole ); };
    for ( std::uint32_t i = 0; i <= holes; ++i )
    {
        auto cl = std::vector< literal >{};
        for ( std::uint32_t j = 0; j < holes; ++j )
            cl.push_back( p( i, j ) );
        h.add_clause( cl );
    }
    for ( std::uint32_t j = 0; j < holes; ++j )
        for ( std::uint32_t a = 0; a <= holes; ++a )
            for ( std::uint32_t b = a + 1; b <= holes; ++b )
                h.add_clause( { !p( a, j ), !p( b, j ) } );
}

} // namespace

TEST_CASE( "conflict budget exhaustion is reported as unknown" )
{
    auto h = sat::solver_handle{ 9 * 8 };
    add_pigeonhole( h, 8 );
    CHECK( h.solve( {}, 10 ).outcome == sat::status::unknown );

    auto small = sat::solver_handle{ 5 * 4 };
    add_pigeonhole( small, 4 );
    CHECK( small.solve( {} ).is_unsat() );
}

TEST_CASE( "agreement with truth-table enumeration on random CNFs" )
{
    auto rng = std::mt19937_64{ 2024 };
    for ( int i = 0; i < 1000; ++i )
    {
        const auto f = test::make_random_cnf( rng, 14, 60 );
        INFO( "formula " << i );
        CHECK( test::check_against_truth_table( f, i ) == "" );
    }
}

TEST_CASE( "adding clauses never turns UNSAT into SAT" )
{
    auto rng = std::mt19937_64{ 77 };
    for ( int round = 0; round < 100; ++round )
    {
        const auto f = test::make_random_cnf( rng, 8, 30 );
        auto h = sat::solver_handle{ f.vars };
        bool was_unsat = false;
        for ( const auto& cl : f.clauses )
        {
            h.add_clause( cl );
            const bool unsat = h.solve( f.assumptions ).is_unsat();
            CHECK( ( !was_unsat || unsat ) );
            was_unsat = unsat;
        }
    }
}

TEST_CASE( "identical histories give identical models" )
{
    auto rng = std::mt19937_64{ 5 };
    const auto f = test::make_random_cnf( rng, 14, 30 );
    auto a = sat::solver_handle{ f.vars, 42 };
    auto b = sat::solver_handle{ f.vars, 42 };
    for ( const auto& cl : f.clauses )
    {
        a.add_clause( cl );
        b.add_clause( cl );
    }
    const auto ra = a.solve( {} );
    const auto rb = b.solve( {} );
    CHECK( ra.outcome == rb.outcome );
    CHECK( ra.model == rb.model );
}

TEST_CASE( "temporary clauses can be retired" )
{
    auto h = sat::solver_handle{ 1 };
    const auto act = h.add_temporary( std::vector< literal >{ pos( 0 ) } );
    CHECK( h.solve( std::vector< literal >{ act, neg( 0 ) } ).is_unsat() );
    h.retire( act );
    CHECK( h.solve( std::vector< literal >{ neg( 0 ) } ).is_sat() );
}

TEST_CASE( "recorded clause database dumps as DIMACS" )
{
    auto h = sat::solver_handle{ 2, 0, true };
    h.add_clause( { pos( 0 ), neg( 1 ) } );
    auto out = std::ostringstream{};
    h.dump_dimacs( out );
    CHECK_THAT( out.str(), Catch::Matchers::ContainsSubstring( "p cnf 2 1" ) );
    CHECK_THAT( out.str(), Catch::Matchers::ContainsSubstring( "1 -2 0" ) );
}

TEST_CASE( "a replacement backend plugs in through the abstract interface" )
{
    auto backend = std::make_unique< sat::cdcl_solver >( 3 );
    sat::incremental_solver* raw = backend.get();
    auto h = sat::solver_handle{ std::move( backend ), 2 };
    h.add_clause( { pos( 0 ) } );
    CHECK( h.solve( std::vector< literal >{ neg( 0 ) } ).is_unsat() );
    CHECK( raw->num_vars() >= 2 );
}
