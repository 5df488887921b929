#include "support.hpp"

#include "ic4/fuzz.hpp"
#include "ic4/pd.hpp"

#include <catch_amalgamated.hpp>

using namespace ic4;
using ic4::test::load_fixture;
using ic4::test::make_state;
using ic4::test::neg;
using ic4::test::pos;

TEST_CASE( "form_q is the full clause excluding one state" )
{
    CHECK( form_q( make_state( { 0, 1 } ) ) == clause{ pos( 0 ), neg( 1 ) } );
    CHECK( form_q( make_state( { 1 } ) ) == clause{ neg( 0 ) } );
    CHECK( form_q( make_state( { 1, 0, 1 } ) ) == clause{ neg( 0 ), pos( 1 ), neg( 2 ) } );
}

TEST_CASE( "strengthen_q" )
{
    SECTION( "nothing to drop" )
    {
        const auto ts = load_fixture( "ts_sat3" );
        auto store = reach_store{};
        store.seed( ts );
        const auto q = clause{ pos( 0 ), neg( 1 ) };
        CHECK( strengthen_q( q, ts, {}, store ) == q );
    }
    SECTION( "stuck latch is dropped to a unit" )
    {
        // two latches holding their reset value, bad = l0 & l1
        const auto ts = aiger::encode( aiger::parse_aag( "aag 3 0 2 0 1 1\n2 2\n4 4\n6\n6 4 2\n" ) );
        auto store = reach_store{};
        store.seed( ts );
        const auto q = form_q( make_state( { 1, 1 } ) );
        const auto strong = strengthen_q( q, ts, {}, store );
        CHECK( strong == clause{ neg( 1 ) } );
        CHECK_FALSE( oracle::check_invariant( ts, invariant{ { strong }, true }, oracle::bfs( ts ) ) );
    }
    SECTION( "stored reachable states keep their literals" )
    {
        const auto ts = load_fixture( "ts_sat3" );
        auto store = reach_store{};
        store.seed( ts );
        (void)store.add_trace( ts, trace{ { make_state( { 0, 0 } ), make_state( { 1, 0 } ), make_state( { 1, 1 } ) },
                                          { {}, {} } } );
        const auto q = clause{ neg( 0 ), neg( 1 ) };
        CHECK( strengthen_q( q, ts, {}, store ) == q );
    }
}

TEST_CASE( "local proofs" )
{
    SECTION( "unreachable target" )
    {
        const auto ts = load_fixture( "ts_sat3" );
        auto store = reach_store{};
        store.seed( ts );
        const auto target = make_state( { 0, 1 } );
        const auto v = prove_local( target, ts, {}, effort_mode::minimal(), {}, store );
        REQUIRE( is_safe( v ) );
        const auto& inv = std::get< safe >( v ).inv;
        CHECK_FALSE( inv.includes_property );
        auto all = inv.clauses;
        all.push_back( form_q( target ) );
        CHECK_FALSE( oracle::check_invariant( ts, invariant{ all, true }, oracle::bfs( ts ) ) );
    }
    SECTION( "reachable target gives a global counterexample" )
    {
        const auto ts = load_fixture( "ts_cnt4" );
        auto store = reach_store{};
        store.seed( ts );
        const auto v = prove_local( make_state( { 1, 1 } ), ts, {}, effort_mode::minimal(), {}, store );
        REQUIRE( is_unsafe( v ) );
        const auto& t = std::get< unsafe >( v ).cex;
        CHECK_FALSE( oracle::validate_trace( ts, t ) );
        CHECK( ts.is_bad( t.states.back() ) );
    }
}

TEST_CASE( "decomposition on the fixtures" )
{
    const auto opts = pd_options{};
    SECTION( "stuck latch" )
    {
        const auto ts = load_fixture( "ts_stuck" );
        auto stats = run_stats{};
        const auto v = prove_pd( ts, opts, &stats );
        REQUIRE( is_safe( v ) );
        CHECK_FALSE( oracle::check_invariant( ts, std::get< safe >( v ).inv, oracle::bfs( ts ) ) );
        CHECK( stats.engine == "ic4-pd" );
        REQUIRE( stats.pd );
        CHECK( stats.pd->q_generated == 0 );
    }
    SECTION( "saturating pair" )
    {
        const auto ts = load_fixture( "ts_sat3" );
        const auto v = prove_pd( ts, opts );
        REQUIRE( is_safe( v ) );
        CHECK_FALSE( oracle::check_invariant( ts, std::get< safe >( v ).inv, oracle::bfs( ts ) ) );
    }
    SECTION( "two-bit counter" )
    {
        const auto ts = load_fixture( "ts_cnt4" );
        const auto v = prove_pd( ts, opts );
        REQUIRE( is_unsafe( v ) );
        CHECK( std::get< unsafe >( v ).cex.states.size() == 4 );
    }
}

TEST_CASE( "decomposition invariants are inductive on random models" )
{
    auto rng = std::mt19937_64{ 99 };
    std::size_t safe_runs = 0;
    std::size_t decomposed = 0;
    for ( int model = 0; model < 80; ++model )
    {
        const auto ts = aiger::encode( random_circuit( rng, 1 + rng() % 6, rng() % 24, rng() % 3 ) );
        const auto rm = oracle::bfs( ts );
        const bool expect_safe = std::holds_alternative< oracle::verdict_safe >( oracle::oracle_verdict( ts, rm ) );
        auto opts = pd_options{};
        opts.engine.self_check = &rm;
        auto stats = run_stats{};
        INFO( "model " << model );
        verdict v;
        REQUIRE_NOTHROW( v = prove_pd( ts, opts, &stats ) );
        REQUIRE( is_safe( v ) == expect_safe );
        if ( const auto* s = std::get_if< safe >( &v ) )
        {
            ++safe_runs;
            CHECK_FALSE( oracle::check_invariant( ts, s->inv, rm ) );
            REQUIRE( stats.pd );
            CHECK( stats.pd->q_inductive <= stats.pd->q_generated );
            if ( stats.pd->q_generated > 0 )
                ++decomposed;
        }
        else
            CHECK_FALSE( oracle::validate_trace( ts, std::get< unsafe >( v ).cex ) );
    }
    CHECK( safe_runs > 10 );
    CHECK( decomposed > 0 );
}
