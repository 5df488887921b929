#include "support.hpp"

#include "ic4/engine.hpp"
#include "ic4/fuzz.hpp"

#include <catch_amalgamated.hpp>

using namespace ic4;
using ic4::test::load_fixture;
using ic4::test::make_state;
using ic4::test::neg;
using ic4::test::pos;

namespace
{

bool in_frame( const transition_system& ts, const frame_seq& f, std::size_t level, const state& s )
{
    if ( level == 0 )
        return ts.is_initial( s );
    for ( const auto& cl : f.frame( level ) )
        if ( !satisfies( s, cl ) )
            return false;
    return true;
}

// Explicit check of I -> cl and F_{level-1} & cl & T -> cl'.
bool relatively_inductive( const transition_system& ts, const frame_seq& f, const clause& cl, std::size_t level )
{
    const auto n = ts.num_latches();
    for ( std::uint64_t sb = 0; sb < ( std::uint64_t{ 1 } << n ); ++sb )
    {
        const auto s = state::unpack( sb, n );
        if ( ts.is_initial( s ) && !satisfies( s, cl ) )
            return false;
        if ( !in_frame( ts, f, level - 1, s ) || !satisfies( s, cl ) || ts.is_bad( s ) )
            continue;
        for ( std::uint64_t xb = 0; xb < ( std::uint64_t{ 1 } << ts.num_inputs() ); ++xb )
        {
            auto x = std::vector< bool >( ts.num_inputs() );
            for ( std::size_t i = 0; i < x.size(); ++i )
                x[ i ] = ( ( xb >> i ) & 1u ) != 0;
            if ( !satisfies( ts.step( s, x ), cl ) )
                return false;
        }
    }
    return true;
}

proof_obligation obligation( const state& s, std::size_t level )
{
    auto po = proof_obligation{};
    po.c = state_to_cube( s );
    po.level = level;
    return po;
}

} // namespace

TEST_CASE( "plain IC3 verdicts on the fixtures" )
{
    SECTION( "stuck latch" )
    {
        const auto ts = load_fixture( "ts_stuck" );
        auto e = engine{ ts, {} };
        const auto v = e.prove_ic3();
        REQUIRE( is_safe( v ) );
        CHECK_FALSE( oracle::check_invariant( ts, std::get< safe >( v ).inv, oracle::bfs( ts ) ) );
        CHECK( e.stats().frames_opened == 1 );
    }
    SECTION( "saturating pair" )
    {
        const auto ts = load_fixture( "ts_sat3" );
        auto e = engine{ ts, {} };
        const auto v = e.prove_ic3();
        REQUIRE( is_safe( v ) );
        CHECK_FALSE( oracle::check_invariant( ts, std::get< safe >( v ).inv, oracle::bfs( ts ) ) );
        CHECK( e.stats().frames_opened == 1 );
    }
    SECTION( "two-bit counter" )
    {
        const auto ts = load_fixture( "ts_cnt4" );
        auto e = engine{ ts, {} };
        const auto v = e.prove_ic3();
        REQUIRE( is_unsafe( v ) );
        const auto& t = std::get< unsafe >( v ).cex;
        CHECK( t.states.size() == 4 );
        CHECK_FALSE( oracle::validate_trace( ts, t ) );
        CHECK( ts.is_bad( t.states.back() ) );
    }
}

TEST_CASE( "constant-true property is proven without frames" )
{
    const auto ts = aiger::encode( aiger::parse_aag( "aag 1 0 1 1 0\n2 3\n0\n" ) );
    auto e = engine{ ts, {} };
    const auto v = e.prove_ic3();
    REQUIRE( is_safe( v ) );
    CHECK( std::get< safe >( v ).inv.clauses.empty() );
    CHECK( e.stats().frames_opened == 0 );
}

TEST_CASE( "bad initial state gives a one-state counterexample" )
{
    const auto ts = aiger::encode( aiger::parse_aag( "aag 1 0 1 1 0\n2 2\n3\n" ) );
    auto e = engine{ ts, {} };
    const auto v = e.prove_ic3();
    REQUIRE( is_unsafe( v ) );
    CHECK( std::get< unsafe >( v ).cex.states.size() == 1 );
}

TEST_CASE( "blocking proof obligations" )
{
    SECTION( "unreachable state is blocked" )
    {
        const auto ts = load_fixture( "ts_sat3" );
        auto e = engine{ ts, {} };
        e.set_frontier( 2 );
        const auto r = e.block( obligation( make_state( { 0, 1 } ), 2 ) );
        CHECK( std::holds_alternative< blocked >( r ) );
        CHECK( e.frames().excludes( state_to_cube( make_state( { 0, 1 } ) ), 2 ) );
    }
    SECTION( "state at depth three is reached" )
    {
        const auto ts = load_fixture( "ts_cnt4" );
        auto e = engine{ ts, {} };
        e.set_frontier( 3 );
        const auto r = e.block( obligation( make_state( { 1, 1 } ), 3 ) );
        REQUIRE( std::holds_alternative< reached >( r ) );
        const auto& t = std::get< reached >( r ).t;
        CHECK( t.states.size() == 4 );
        CHECK_FALSE( oracle::validate_trace( ts, t ) );
        CHECK( t.states.back() == make_state( { 1, 1 } ) );
    }
    SECTION( "state at depth three is blocked at level two" )
    {
        const auto ts = load_fixture( "ts_cnt4" );
        auto e = engine{ ts, {} };
        e.set_frontier( 2 );
        CHECK( std::holds_alternative< blocked >( e.block( obligation( make_state( { 1, 1 } ), 2 ) ) ) );
    }
    SECTION( "initial cube at level zero" )
    {
        const auto ts = load_fixture( "ts_cnt4" );
        auto e = engine{ ts, {} };
        const auto r = e.block( obligation( ts.init_state(), 0 ) );
        REQUIRE( std::holds_alternative< reached >( r ) );
        CHECK( std::get< reached >( r ).t.states.size() == 1 );
    }
}

TEST_CASE( "generalization keeps the clause relatively inductive" )
{
    const auto ts = load_fixture( "ts_sat3" );
    auto e = engine{ ts, {} };
    e.set_frontier( 1 );
    const auto c = state_to_cube( make_state( { 0, 1 } ) );
    const auto cl = e.generalize( c, 1 );
    CHECK( subsumes( cl, negate_cube( c ) ) );
    CHECK( satisfies( ts.init_state(), cl ) );
    CHECK( relatively_inductive( ts, e.frames(), cl, 1 ) );
    // !l1 is inductive relative to I alone.
    CHECK( cl == clause{ neg( 1 ) } );
}

TEST_CASE( "standard pushing reaches a fixed point" )
{
    const auto ts = load_fixture( "ts_sat3" );
    auto e = engine{ ts, {} };
    e.set_frontier( 2 );
    const auto p = clause{ pos( 0 ), neg( 1 ) };
    e.inject_clause( p, 1 );
    const auto r = e.push_standard( 1, 2 );
    REQUIRE( std::holds_alternative< fixed_point >( r ) );
    CHECK( std::get< fixed_point >( r ).level == 1 );
    CHECK( e.frames().contains( p, 2 ) );

    auto f = engine{ ts, {} };
    f.set_frontier( 2 );
    f.inject_clause( clause{ neg( 0 ) }, 1 );
    CHECK( std::holds_alternative< not_yet >( f.push_standard( 1, 1 ) ) );
    CHECK( f.frames().delta( 1 ).size() == 1 );
}

TEST_CASE( "frame soundness and monotone containment on random models" )
{
    auto rng = std::mt19937_64{ 31 };
    for ( int model = 0; model < 60; ++model )
    {
        const auto ts = aiger::encode( random_circuit( rng, 1 + rng() % 6, rng() % 24, rng() % 3 ) );
        const auto rm = oracle::bfs( ts );
        auto opts = engine_options{};
        opts.self_check = &rm;
        auto e = engine{ ts, opts };
        const auto v = e.prove_ic3();
        CHECK( is_safe( v ) == std::holds_alternative< oracle::verdict_safe >( oracle::oracle_verdict( ts, rm ) ) );
        CHECK_NOTHROW( e.check_soundness( rm ) );

        // F_i -> F_{i+1} as state sets; every reachable state within i steps is in F_i.
        const auto& f = e.frames();
        for ( std::size_t i = 1; i + 1 < f.levels(); ++i )
            for ( const auto& s : rm.states() )
            {
                if ( in_frame( ts, f, i, s ) )
                    CHECK( in_frame( ts, f, i + 1, s ) );
                if ( *rm.depth( s ) <= i )
                    CHECK( in_frame( ts, f, i, s ) );
            }
    }
}
