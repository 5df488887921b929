#include "ic4/fuzz.hpp"

#include "ic4/driver.hpp"
#include "ic4/oracle.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

namespace ic4
{

namespace
{

std::size_t uniform( std::mt19937_64& rng, std::size_t lo, std::size_t hi )
{
    return std::uniform_int_distribution< std::size_t >{ lo, hi }( rng );
}

struct engine_run
{
    const char* engine;
    bool reuse;
};

constexpr engine_run runs[] = {
    { "ic3", true },      { "ic4-min", true },  { "ic4-max", true },  { "ic4-heur", true },
    { "ic4-pd", true },   { "ic4-min", false }, { "ic4-max", false }, { "ic4-heur", false },
};

} // namespace

aiger::circuit random_circuit( std::mt19937_64& rng, std::size_t latches, std::size_t ands, std::size_t inputs )
{
    auto c = aiger::circuit{};
    c.max_var = static_cast< std::uint32_t >( inputs + latches + ands );

    auto pool = std::vector< aiger::aig_literal >{};
    std::uint32_t v = 1;
    for ( std::size_t i = 0; i < inputs; ++i, ++v )
    {
        c.inputs.push_back( 2 * v );
        pool.push_back( 2 * v );
    }
    for ( std::size_t i = 0; i < latches; ++i, ++v )
    {
        c.latches.push_back( { 2 * v, 0, uniform( rng, 0, 3 ) == 0 } );
        pool.push_back( 2 * v );
    }
    const auto signed_pick = [ & ] {
        return pool[ uniform( rng, 0, pool.size() - 1 ) ] ^ static_cast< aiger::aig_literal >( uniform( rng, 0, 1 ) );
    };
    for ( std::size_t i = 0; i < ands; ++i, ++v )
    {
        auto a = signed_pick();
        auto b = signed_pick();
        if ( a < b )
            std::swap( a, b );
        c.ands.push_back( { 2 * v, a, b } );
        pool.push_back( 2 * v );
    }
    for ( auto& l : c.latches )
        l.next = uniform( rng, 0, 15 ) == 0 ? static_cast< aiger::aig_literal >( uniform( rng, 0, 1 ) ) : signed_pick();

    // Prefer gate outputs for the bad signal so that it depends on several latches.
    if ( ands > 0 )
        c.bad = c.ands[ uniform( rng, ands / 2, ands - 1 ) ].lhs ^ static_cast< aiger::aig_literal >( uniform( rng, 0, 1 ) );
    else
        c.bad = signed_pick();
    return c;
}

fuzz_report run_fuzz( const fuzz_config& cfg )
{
    auto report = fuzz_report{};
    auto rng = std::mt19937_64{ cfg.seed };

    for ( std::size_t m = 0; m < cfg.count; ++m )
    {
        const bool want_safe = m % 2 == 0;
        const auto name = "fuzz-" + std::to_string( cfg.seed ) + "-" + std::to_string( m );

        aiger::circuit circuit;
        transition_system ts;
        oracle::reach_map rm;
        oracle::oracle_result expected;
        for ( int attempt = 0; attempt < 200; ++attempt )
        {
            circuit = random_circuit( rng, uniform( rng, 1, cfg.max_latches ), uniform( rng, 0, cfg.max_ands ),
                                      uniform( rng, 0, cfg.max_inputs ) );
            ts = aiger::encode( circuit, name );
            rm = oracle::bfs( ts );
            expected = oracle::oracle_verdict( ts, rm );
            if ( std::holds_alternative< oracle::verdict_safe >( expected ) != want_safe )
                continue;
            // Shallow models barely exercise pushing; prefer deep ones while attempts last.
            const auto depth = want_safe ? rm.diameter() : std::get< oracle::verdict_unsafe >( expected ).depth;
            if ( attempt >= 150 || depth >= 3 )
                break;
        }

        ++report.models;
        const bool expect_safe = std::holds_alternative< oracle::verdict_safe >( expected );
        if ( expect_safe )
            ++report.safe_models;
        else
            ++report.unsafe_models;

        bool model_failed = false;
        const auto fail = [ & ]( std::size_t& counter, const std::string& engine, const std::string& what ) {
            ++counter;
            report.failures.push_back( name + " " + engine + ": " + what );
            model_failed = true;
        };

        std::optional< std::size_t > reach_on[ 3 ];
        for ( const auto& r : runs )
        {
            const auto label = std::string{ r.engine } + ( r.reuse ? "" : " (no reuse)" );
            auto config = run_config{};
            config.engine = r.engine;
            config.opts.seed = cfg.seed;
            config.opts.reuse = r.reuse;
            config.opts.self_check = &rm;
            config.heur_conflicts = cfg.heur_conflicts;
            config.heur_unpush_per_frame = cfg.heur_unpush_per_frame;

            run_outcome out;
            try
            {
                out = run_engine( ts, config );
            }
            catch ( const bound_violation& e )
            {
                fail( report.bound_violations, label, e.what() );
                continue;
            }
            catch ( const std::exception& e )
            {
                fail( report.internal_errors, label, e.what() );
                continue;
            }

            report.rows.push_back( { name, r.engine, r.reuse, out.stats.verdict, out.stats.frames_opened, rm.diameter(),
                                     out.stats.reach_generated } );

            if ( is_safe( out.v ) != expect_safe || !( is_safe( out.v ) || is_unsafe( out.v ) ) )
            {
                fail( report.verdict_mismatches, label, std::string{ "verdict " } + verdict_name( out.v ) );
                continue;
            }

            if ( const auto* s = std::get_if< safe >( &out.v ) )
            {
                if ( const auto failure = oracle::check_invariant( ts, s->inv, rm ) )
                {
                    fail( report.certificate_failures, label, failure->what );
                    if ( std::string_view{ r.engine } == "ic4-pd" )
                        ++report.pd_certificate_failures;
                }
                if ( std::string_view{ r.engine } != "ic3" && out.stats.frames_opened > rm.diameter() + 1 )
                    fail( report.convergence_violations, label,
                          "frames " + std::to_string( out.stats.frames_opened ) + " > diameter + 1 = " +
                              std::to_string( rm.diameter() + 1 ) );
            }
            else
            {
                const auto& t = std::get< unsafe >( out.v ).cex;
                const auto min_depth = std::get< oracle::verdict_unsafe >( expected ).depth;
                if ( oracle::validate_trace( ts, t ) || !ts.is_bad( t.states.back() ) ||
                     t.transitions() < min_depth )
                    fail( report.certificate_failures, label, "invalid counterexample" );
            }

            const auto slot = std::string_view{ r.engine } == "ic4-min"   ? 0
                              : std::string_view{ r.engine } == "ic4-max" ? 1
                              : std::string_view{ r.engine } == "ic4-heur" ? 2
                                                                           : 3;
            if ( slot < 3 )
            {
                if ( r.reuse )
                    reach_on[ slot ] = out.stats.reach_generated;
                else if ( reach_on[ slot ] )
                {
                    ++report.reuse_pairs;
                    report.reach_with_reuse += *reach_on[ slot ];
                    report.reach_without_reuse += out.stats.reach_generated;
                }
            }
        }

        if ( model_failed && cfg.dump_dir )
        {
            std::filesystem::create_directories( *cfg.dump_dir );
            auto file = std::ofstream{ std::filesystem::path{ *cfg.dump_dir } / ( name + ".aag" ) };
            aiger::write_aag( file, circuit );
        }
    }
    return report;
}

void write_fuzz_csv( std::ostream& out, const fuzz_report& report )
{
    out << "model,engine,reuse,verdict,frames,diameter,reach_generated\n";
    for ( const auto& r : report.rows )
        out << r.model << ',' << r.engine << ',' << ( r.reuse ? 1 : 0 ) << ',' << r.verdict << ',' << r.frames << ','
            << r.diameter << ',' << r.reach_generated << '\n';
}

} // namespace ic4
