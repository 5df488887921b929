#include "ic4/aiger.hpp"
#include "ic4/driver.hpp"
#include "ic4/fuzz.hpp"
#include "ic4/oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace
{

constexpr int exit_unknown = 0;
constexpr int exit_user_error = 1;
constexpr int exit_internal = 2;
constexpr int exit_safe = 10;
constexpr int exit_unsafe = 20;

struct options
{
    std::string engine = "ic4-min";
    std::string model;
    std::uint64_t seed = 0;
    std::size_t max_frames = 1000;
    std::uint64_t time_limit_ms = 0;
    std::uint64_t heur_conflicts = 10'000;
    std::size_t heur_unpush_per_frame = 3;
    bool oracle_check = false;
    bool no_reuse = false;
    std::string certificate;
    std::string witness;
    std::string dump_traces;
    std::string dump_cnf;
    std::string stats;
    std::size_t fuzz = 0;
    std::size_t fuzz_latches = 8;
    std::size_t fuzz_ands = 32;
    std::size_t fuzz_inputs = 2;
    std::string fuzz_dump = "fuzz-failures";
};

std::ofstream open_output( const std::string& path )
{
    auto out = std::ofstream{ path };
    if ( !out )
        throw std::runtime_error( "cannot write " + path );
    return out;
}

int run_fuzz( const options& o )
{
    auto cfg = ic4::fuzz_config{};
    cfg.count = o.fuzz;
    cfg.max_latches = o.fuzz_latches;
    cfg.max_ands = o.fuzz_ands;
    cfg.max_inputs = o.fuzz_inputs;
    cfg.seed = o.seed;
    cfg.heur_conflicts = o.heur_conflicts;
    cfg.heur_unpush_per_frame = o.heur_unpush_per_frame;
    cfg.dump_dir = o.fuzz_dump;

    const auto report = ic4::run_fuzz( cfg );
    ic4::write_fuzz_csv( std::cout, report );
    std::cerr << report.models << " models (" << report.safe_models << " safe, " << report.unsafe_models
              << " unsafe), " << report.failures.size() << " failures\n";
    for ( const auto& f : report.failures )
        std::cerr << "FAIL " << f << '\n';
    return report.ok() ? 0 : exit_internal;
}

// Cross-checks the verdict against explicit reachability; empty string = pass.
std::string oracle_check( const ic4::transition_system& ts, const ic4::verdict& v )
{
    const auto rm = ic4::oracle::bfs( ts );
    const auto expected = ic4::oracle::oracle_verdict( ts, rm );
    if ( const auto* s = std::get_if< ic4::safe >( &v ) )
    {
        if ( std::holds_alternative< ic4::oracle::verdict_unsafe >( expected ) )
            return "oracle finds a reachable bad state";
        if ( const auto failure = ic4::oracle::check_invariant( ts, s->inv, rm ) )
            return failure->what;
    }
    if ( const auto* u = std::get_if< ic4::unsafe >( &v ) )
    {
        if ( std::holds_alternative< ic4::oracle::verdict_safe >( expected ) )
            return "oracle proves the model safe";
        if ( const auto step = ic4::oracle::validate_trace( ts, u->cex ) )
            return "counterexample fails at step " + std::to_string( *step );
        if ( !ts.is_bad( u->cex.states.back() ) )
            return "counterexample does not end in a bad state";
    }
    return {};
}

int check_model( const options& o )
{
    const auto circuit = ic4::aiger::read_aag_file( o.model );
    const auto ts = ic4::aiger::encode( circuit, std::filesystem::path{ o.model }.stem().string() );

    if ( !o.dump_cnf.empty() )
    {
        auto out = open_output( o.dump_cnf );
        ic4::write_dimacs( out, ts );
    }

    auto cfg = ic4::run_config{};
    cfg.engine = o.engine;
    cfg.opts.seed = o.seed;
    cfg.opts.max_frames = o.max_frames;
    cfg.opts.reuse = !o.no_reuse;
    if ( o.time_limit_ms > 0 )
        cfg.opts.time_limit = std::chrono::milliseconds{ o.time_limit_ms };
    cfg.heur_conflicts = o.heur_conflicts;
    cfg.heur_unpush_per_frame = o.heur_unpush_per_frame;

    const auto out = ic4::run_engine( ts, cfg );

    if ( o.oracle_check && ts.num_latches() <= 20 )
        if ( const auto problem = oracle_check( ts, out.v ); !problem.empty() )
        {
            std::cerr << "ic4mc: oracle check failed: " << problem << '\n';
            return exit_internal;
        }

    std::cout << ic4::verdict_name( out.v ) << std::endl;

    if ( const auto* s = std::get_if< ic4::safe >( &out.v ); s && !o.certificate.empty() )
    {
        auto file = open_output( o.certificate );
        ic4::write_invariant_dimacs( file, ts, s->inv, ts.name(), o.engine );
    }
    if ( const auto* u = std::get_if< ic4::unsafe >( &out.v ); u && !o.witness.empty() )
    {
        auto file = open_output( o.witness );
        ic4::write_witness( file, ts, u->cex );
    }
    if ( !o.dump_traces.empty() )
    {
        auto file = open_output( o.dump_traces );
        ic4::write_traces( file, ts, out.traces );
    }
    if ( o.stats == "-" )
        std::cerr << ic4::to_json_line( out.stats ) << '\n';
    else if ( !o.stats.empty() )
    {
        auto file = open_output( o.stats );
        file << ic4::to_json_line( out.stats ) << '\n';
    }

    if ( ic4::is_safe( out.v ) )
        return exit_safe;
    if ( ic4::is_unsafe( out.v ) )
        return exit_unsafe;
    return exit_unknown;
}

} // namespace

int main( int argc, char** argv )
{
    auto app = CLI::App{ "ic4mc: IC3 / IC4 safety model checker for ASCII AIGER models" };
    auto o = options{};

    auto names = std::vector< std::string >( ic4::engine_names.begin(), ic4::engine_names.end() );
    app.add_option( "--engine", o.engine, "ic3, ic4-min, ic4-max, ic4-heur or ic4-pd" )
        ->check( CLI::IsMember( names ) )
        ->capture_default_str();
    app.add_option( "model", o.model, "model in ASCII AIGER (.aag) format" );
    app.add_option( "--seed", o.seed, "solver and fuzz seed" )->capture_default_str();
    app.add_option( "--max-frames", o.max_frames, "give up after this many frames" )->capture_default_str();
    app.add_option( "--time-limit-ms", o.time_limit_ms, "wall-clock limit, 0 = none" )->capture_default_str();
    app.add_option( "--heur-conflicts", o.heur_conflicts, "ic4-heur conflict budget per fixing attempt" )
        ->check( CLI::PositiveNumber )
        ->capture_default_str();
    app.add_option( "--heur-unpush-per-frame", o.heur_unpush_per_frame,
                    "ic4-heur unpushability proofs per frame before plain pushing" )
        ->check( CLI::PositiveNumber )
        ->capture_default_str();
    app.add_flag( "--oracle-check", o.oracle_check, "cross-check the result by explicit reachability" );
    app.add_flag( "--no-reuse", o.no_reuse, "do not reuse stored reachable states" );
    app.add_option( "--certificate", o.certificate, "write the invariant (DIMACS) when SAFE" );
    app.add_option( "--witness", o.witness, "write the counterexample (AIGER witness) when UNSAFE" );
    app.add_option( "--dump-traces", o.dump_traces, "write all reachable-state traces as stimuli" );
    app.add_option( "--dump-cnf", o.dump_cnf, "write the encoded transition system as DIMACS" );
    app.add_option( "--stats", o.stats, "write a JSON-lines statistics record ('-' = stderr)" );
    app.add_option( "--fuzz", o.fuzz, "run the fuzz harness on N random models, CSV to stdout" );
    app.add_option( "--fuzz-latches", o.fuzz_latches, "maximum latches per fuzz model" )->capture_default_str();
    app.add_option( "--fuzz-ands", o.fuzz_ands, "maximum AND gates per fuzz model" )->capture_default_str();
    app.add_option( "--fuzz-inputs", o.fuzz_inputs, "maximum inputs per fuzz model" )->capture_default_str();
    app.add_option( "--fuzz-dump", o.fuzz_dump, "directory for failing fuzz models" )->capture_default_str();

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError& e )
    {
        std::cerr << "ic4mc: " << e.what() << '\n' << app.help();
        return exit_user_error;
    }

    if ( o.fuzz == 0 && o.model.empty() )
    {
        std::cerr << "ic4mc: no model given\n" << app.help();
        return exit_user_error;
    }

    try
    {
        return o.fuzz > 0 ? run_fuzz( o ) : check_model( o );
    }
    catch ( const ic4::engine_error& e )
    {
        std::cerr << "ic4mc: internal error: " << e.what() << '\n';
        return exit_internal;
    }
    catch ( const std::exception& e )
    {
        std::cerr << "ic4mc: " << e.what() << '\n';
        return exit_user_error;
    }
}
