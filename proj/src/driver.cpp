#include "ic4/driver.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace ic4
{

bool is_engine_name( std::string_view name )
{
    return std::ranges::find( engine_names, name ) != engine_names.end();
}

std::vector< trace > store_traces( const reach_store& store )
{
    auto has_successor = std::vector< bool >( store.size(), false );
    for ( const auto& e : store.entries() )
        if ( e.pred )
            has_successor[ *e.pred ] = true;

    auto out = std::vector< trace >{};
    for ( std::size_t i = 0; i < store.size(); ++i )
        if ( !has_successor[ i ] && store[ i ].depth > 0 )
            out.push_back( store.trace_to( i ) );
    return out;
}

run_outcome run_engine( const transition_system& ts, const run_config& cfg )
{
    if ( !is_engine_name( cfg.engine ) )
        throw std::invalid_argument( "unknown engine '" + cfg.engine + "'" );

    auto store = reach_store{};
    auto out = run_outcome{};
    if ( cfg.engine == "ic4-pd" )
    {
        auto opts = pd_options{ cfg.opts, effort_mode::minimal(), std::nullopt, &store };
        out.v = prove_pd( ts, opts, &out.stats );
    }
    else
    {
        auto e = engine{ ts, cfg.opts, &store };
        if ( cfg.engine == "ic3" )
            out.v = e.prove_ic3();
        else if ( cfg.engine == "ic4-min" )
            out.v = e.prove_ic4( effort_mode::minimal() );
        else if ( cfg.engine == "ic4-max" )
            out.v = e.prove_ic4( effort_mode::maximal() );
        else
            out.v = e.prove_ic4( effort_mode::heuristic( cfg.heur_conflicts, cfg.heur_unpush_per_frame ) );
        out.stats = e.stats();
    }
    out.stats.model = ts.name();
    out.traces = store_traces( store );
    return out;
}

namespace
{

void write_bits( std::ostream& out, const std::vector< bool >& bits, std::size_t count )
{
    for ( std::size_t i = 0; i < count; ++i )
        out << ( bits[ i ] ? '1' : '0' );
    out << '\n';
}

void write_stimulus( std::ostream& out, const transition_system& ts, const trace& t )
{
    write_bits( out, t.states.front().values(), ts.original_latches() );
    for ( const auto& x : t.inputs )
        write_bits( out, x, ts.num_inputs() );
    out << ".\n";
}

} // namespace

void write_witness( std::ostream& out, const transition_system& ts, const trace& t )
{
    out << "1\nb0\n";
    write_stimulus( out, ts, t );
}

void write_traces( std::ostream& out, const transition_system& ts, const std::vector< trace >& traces )
{
    for ( const auto& t : traces )
        write_stimulus( out, ts, t );
}

void write_invariant_dimacs( std::ostream& out, const transition_system& ts, const invariant& inv,
                             std::string_view model, std::string_view engine )
{
    const auto latches = ts.num_latches();
    auto rows = std::vector< std::vector< long long > >{};
    for ( const auto& cl : inv.clauses )
    {
        auto row = std::vector< long long >{};
        for ( const auto lit : cl )
        {
            const auto n = static_cast< long long >( lit.variable().index() ) + 1;
            row.push_back( lit.negative() ? -n : n );
        }
        rows.push_back( std::move( row ) );
    }

    auto aux = std::map< std::uint32_t, long long >{};
    if ( inv.includes_property )
    {
        for ( const auto& cl : ts.property() )
        {
            auto row = std::vector< long long >{};
            for ( const auto lit : cl )
            {
                const auto v = lit.variable().index();
                long long n = 0;
                if ( v < latches )
                    n = static_cast< long long >( v ) + 1;
                else
                {
                    const auto [ it, fresh ] =
                        aux.emplace( v, static_cast< long long >( latches + aux.size() ) + 1 );
                    n = it->second;
                }
                row.push_back( lit.negative() ? -n : n );
            }
            rows.push_back( std::move( row ) );
        }
    }

    out << "c inductive invariant for " << model << " from engine " << engine << '\n';
    out << "c variables 1.." << latches << " are latches 0.." << ( latches == 0 ? 0 : latches - 1 ) << '\n';
    if ( !aux.empty() )
        out << "c variables " << latches + 1 << ".." << latches + aux.size() << " define the property cone\n";
    out << "p cnf " << latches + aux.size() << ' ' << rows.size() << '\n';
    for ( const auto& row : rows )
    {
        for ( const auto n : row )
            out << n << ' ';
        out << "0\n";
    }
}

} // namespace ic4
