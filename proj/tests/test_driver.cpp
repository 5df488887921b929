#include "support.hpp"

#include "ic4/driver.hpp"
#include "ic4/fuzz.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <sstream>

using namespace ic4;
using ic4::test::load_fixture;
using ic4::test::make_state;

namespace
{

run_outcome run( const transition_system& ts, const std::string& engine )
{
    auto cfg = run_config{};
    cfg.engine = engine;
    return run_engine( ts, cfg );
}

} // namespace

TEST_CASE( "engine names" )
{
    for ( const auto name : engine_names )
        CHECK( is_engine_name( name ) );
    CHECK_FALSE( is_engine_name( "bogus" ) );
    CHECK_THROWS_AS( run( load_fixture( "ts_sat3" ), "bogus" ), std::invalid_argument );
}

TEST_CASE( "every engine agrees on the fixtures" )
{
    for ( const auto name : engine_names )
    {
        const auto engine = std::string{ name };
        INFO( engine );
        CHECK( is_safe( run( load_fixture( "ts_stuck" ), engine ).v ) );
        CHECK( is_safe( run( load_fixture( "ts_sat3" ), engine ).v ) );
        const auto out = run( load_fixture( "ts_cnt4" ), engine );
        REQUIRE( is_unsafe( out.v ) );
        CHECK( out.stats.verdict == "UNSAFE" );
        CHECK( out.stats.engine == engine );
    }
}

TEST_CASE( "witness format" )
{
    const auto ts = load_fixture( "ts_cnt4" );
    const auto out = run( ts, "ic3" );
    REQUIRE( is_unsafe( out.v ) );
    auto text = std::ostringstream{};
    write_witness( text, ts, std::get< unsafe >( out.v ).cex );
    CHECK( text.str() == "1\nb0\n00\n\n\n\n.\n" );
}

TEST_CASE( "witness input lines replay to the bad state" )
{
    auto rng = std::mt19937_64{ 17 };
    int checked = 0;
    for ( int model = 0; model < 40 && checked < 10; ++model )
    {
        const auto ts = aiger::encode( random_circuit( rng, 1 + rng() % 5, rng() % 20, 1 + rng() % 2 ) );
        const auto out = run( ts, "ic4-min" );
        const auto* u = std::get_if< unsafe >( &out.v );
        if ( !u )
            continue;
        ++checked;
        auto text = std::istringstream{ [ & ] {
            auto s = std::ostringstream{};
            write_witness( s, ts, u->cex );
            return s.str();
        }() };
        auto line = std::string{};
        std::getline( text, line );
        CHECK( line == "1" );
        std::getline( text, line );
        CHECK( line == "b0" );
        std::getline( text, line );
        CHECK( line.size() == ts.original_latches() );
        auto inputs = std::vector< std::vector< bool > >{};
        while ( std::getline( text, line ) && line != "." )
        {
            REQUIRE( line.size() == ts.num_inputs() );
            auto x = std::vector< bool >{};
            for ( const char ch : line )
                x.push_back( ch == '1' );
            inputs.push_back( x );
        }
        CHECK( line == "." );
        const auto replay = simulate_trace( ts, ts.init_state(), inputs );
        CHECK( ts.is_bad( replay.states.back() ) );
    }
    CHECK( checked == 10 );
}

TEST_CASE( "invariant DIMACS" )
{
    SECTION( "stuck latch" )
    {
        const auto ts = load_fixture( "ts_stuck" );
        const auto out = run( ts, "ic4-pd" );
        REQUIRE( is_safe( out.v ) );
        auto text = std::ostringstream{};
        write_invariant_dimacs( text, ts, std::get< safe >( out.v ).inv, "ts_stuck", "ic4-pd" );
        CHECK( text.str() == "c inductive invariant for ts_stuck from engine ic4-pd\n"
                             "c variables 1..1 are latches 0..0\n"
                             "p cnf 1 1\n"
                             "-1 0\n" );
    }
    SECTION( "property cone variables follow the latches" )
    {
        const auto ts = load_fixture( "ts_sat3" );
        auto text = std::ostringstream{};
        write_invariant_dimacs( text, ts, invariant{ {}, true }, "ts_sat3", "ic3" );
        CHECK_THAT( text.str(), Catch::Matchers::ContainsSubstring( "c variables 3..3 define the property cone" ) );
        CHECK_THAT( text.str(), Catch::Matchers::ContainsSubstring( "-3 0\n" ) );
    }
}

TEST_CASE( "trace export covers the stored reachable states" )
{
    const auto ts = load_fixture( "ts_cnt4" );
    auto store = reach_store{};
    store.seed( ts );
    (void)store.add_trace( ts, simulate_trace( ts, ts.init_state(), { {}, {} } ) );
    const auto traces = store_traces( store );
    REQUIRE( traces.size() == 1 );
    CHECK( traces[ 0 ].states.back() == make_state( { 0, 1 } ) );
    auto text = std::ostringstream{};
    write_traces( text, ts, traces );
    CHECK( text.str() == "00\n\n\n.\n" );
}

TEST_CASE( "stats record" )
{
    const auto ts = load_fixture( "ts_sat3" );
    const auto out = run( ts, "ic4-max" );
    const auto j = nlohmann::json::parse( to_json_line( out.stats ) );
    CHECK( j.at( "engine" ) == "ic4-max" );
    CHECK( j.at( "model" ) == "ts_sat3" );
    CHECK( j.at( "verdict" ) == "SAFE" );
    CHECK( j.at( "frames_opened" ) == 1 );
    CHECK( j.at( "frame_convention" ) == frame_convention );
    CHECK( j.at( "effort" ) == "maximal" );
    for ( const auto* key : { "clauses_per_frame", "sat_calls", "obligations", "unpushable", "reach_generated",
                              "reuse_hits" } )
        CHECK( j.contains( key ) );
    CHECK_FALSE( j.contains( "pd" ) );

    const auto plain = nlohmann::json::parse( to_json_line( run( ts, "ic3" ).stats ) );
    CHECK_FALSE( plain.contains( "effort" ) );

    const auto pd = nlohmann::json::parse( to_json_line( run( ts, "ic4-pd" ).stats ) );
    CHECK( pd.at( "pd" ).contains( "q_generated" ) );
    CHECK( to_json_line( out.stats ) == to_json_line( run( ts, "ic4-max" ).stats ) );
}

TEST_CASE( "fuzz runs are reproducible" )
{
    auto cfg = fuzz_config{};
    cfg.count = 12;
    cfg.seed = 3;
    const auto a = run_fuzz( cfg );
    const auto b = run_fuzz( cfg );
    auto ca = std::ostringstream{};
    auto cb = std::ostringstream{};
    write_fuzz_csv( ca, a );
    write_fuzz_csv( cb, b );
    CHECK( ca.str() == cb.str() );
    CHECK( a.ok() );
    CHECK( a.models == 12 );
    CHECK( a.safe_models == 6 );
    CHECK( a.rows.size() == 12 * 8 );
    CHECK( ca.str().starts_with( "model,engine,reuse,verdict,frames,diameter,reach_generated\n" ) );
}
