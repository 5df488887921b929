#include "ic4/aiger.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace ic4::aiger
{

namespace
{

class line_reader
{
    std::istream& _in;
    std::size_t _line = 0;

public:
    explicit line_reader( std::istream& in ) : _in{ in } {}

    [[nodiscard]] std::size_t line() const { return _line; }

    bool next( std::string& out )
    {
        if ( !std::getline( _in, out ) )
            return false;
        ++_line;
        if ( !out.empty() && out.back() == '\r' )
            out.pop_back();
        return true;
    }

    std::string require( const char* what )
    {
        auto text = std::string{};
        if ( !next( text ) )
            throw parse_error( _line + 1, std::string( "unexpected end of file, expected " ) + what );
        return text;
    }
};

std::vector< std::uint32_t > parse_numbers( const std::string& text, std::size_t line )
{
    auto out = std::vector< std::uint32_t >{};
    auto in = std::istringstream{ text };
    auto token = std::string{};
    while ( in >> token )
    {
        if ( token.empty() || !std::ranges::all_of( token, []( char c ) { return c >= '0' && c <= '9'; } ) )
            throw parse_error( line, "expected an unsigned integer, got '" + token + "'" );
        try
        {
            const auto value = std::stoull( token );
            if ( value > 0x7fffffffULL )
                throw parse_error( line, "number out of range: " + token );
            out.push_back( static_cast< std::uint32_t >( value ) );
        }
        catch ( const std::out_of_range& )
        {
            throw parse_error( line, "number out of range: " + token );
        }
    }
    return out;
}

} // namespace

circuit parse_aag( std::istream& in )
{
    auto reader = line_reader{ in };
    auto header = std::string{};
    if ( !reader.next( header ) )
        throw parse_error( 1, "empty input, expected an 'aag' header" );

    auto header_in = std::istringstream{ header };
    auto magic = std::string{};
    header_in >> magic;
    if ( magic == "aig" )
        throw parse_error( 1, "binary AIGER is not supported; convert it with 'aigtoaig model.aig model.aag'" );
    if ( magic != "aag" )
        throw parse_error( 1, "malformed header, expected 'aag M I L O A'" );

    auto rest = std::string{};
    std::getline( header_in, rest );
    const auto counts = parse_numbers( rest, 1 );
    if ( counts.size() < 5 || counts.size() > 9 )
        throw parse_error( 1, "malformed header, expected 'aag M I L O A [B C J F]'" );

    const auto max_var = counts[ 0 ];
    const auto num_inputs = counts[ 1 ];
    const auto num_latches = counts[ 2 ];
    const auto num_outputs = counts[ 3 ];
    const auto num_ands = counts[ 4 ];
    const auto num_bad = counts.size() > 5 ? counts[ 5 ] : 0u;

    for ( std::size_t i = 6; i < counts.size(); ++i )
    {
        if ( counts[ i ] != 0 )
        {
            static constexpr const char* names[] = { "invariant constraint", "justice", "fairness" };
            throw parse_error( 1, std::string( "unsupported section: " ) + names[ i - 6 ] + " properties" );
        }
    }
    if ( static_cast< std::uint64_t >( num_inputs ) + num_latches + num_ands > max_var )
        throw parse_error( 1, "header: M is smaller than I + L + A" );
    if ( num_bad > 1 )
        throw parse_error( 1, "multiple bad-state properties; split the file into one property per model" );
    if ( num_bad == 0 && num_outputs != 1 )
        throw parse_error( 1, "expected exactly one output (or one 'b' property), found " +
                                  std::to_string( num_outputs ) );

    auto c = circuit{};
    c.max_var = max_var;

    const auto max_lit = 2 * max_var + 1;
    auto defined_at = std::vector< std::size_t >( max_var + 1, 0 );
    auto check_lit = [ & ]( aig_literal lit, std::size_t line ) {
        if ( lit > max_lit )
            throw parse_error( line, "literal " + std::to_string( lit ) + " out of range (M = " +
                                         std::to_string( max_var ) + ")" );
    };
    auto define = [ & ]( aig_literal lit, std::size_t line, const char* what ) {
        check_lit( lit, line );
        if ( lit < 2 || ( lit & 1u ) != 0 )
            throw parse_error( line, std::string( what ) + " literal must be even and non-constant" );
        if ( defined_at[ lit / 2 ] != 0 )
            throw parse_error( line, "variable " + std::to_string( lit / 2 ) + " redefined (first defined on line " +
                                         std::to_string( defined_at[ lit / 2 ] ) + ")" );
        defined_at[ lit / 2 ] = line;
    };

    auto uses = std::vector< std::pair< aig_literal, std::size_t > >{};

    for ( std::uint32_t i = 0; i < num_inputs; ++i )
    {
        const auto text = reader.require( "an input definition" );
        const auto nums = parse_numbers( text, reader.line() );
        if ( nums.size() != 1 )
            throw parse_error( reader.line(), "malformed input line" );
        define( nums[ 0 ], reader.line(), "input" );
        c.inputs.push_back( nums[ 0 ] );
    }

    for ( std::uint32_t i = 0; i < num_latches; ++i )
    {
        const auto text = reader.require( "a latch definition" );
        const auto nums = parse_numbers( text, reader.line() );
        if ( nums.size() != 2 && nums.size() != 3 )
            throw parse_error( reader.line(), "malformed latch line" );
        define( nums[ 0 ], reader.line(), "latch" );
        check_lit( nums[ 1 ], reader.line() );
        uses.emplace_back( nums[ 1 ], reader.line() );

        auto l = latch{ nums[ 0 ], nums[ 1 ], false };
        if ( nums.size() == 3 )
        {
            if ( nums[ 2 ] == nums[ 0 ] )
                throw parse_error( reader.line(), "nondeterministic latch reset is not supported" );
            if ( nums[ 2 ] > 1 )
                throw parse_error( reader.line(), "latch reset must be 0, 1 or the latch literal" );
            l.reset = nums[ 2 ] == 1;
        }
        c.latches.push_back( l );
    }

    auto outputs = std::vector< aig_literal >{};
    for ( std::uint32_t i = 0; i < num_outputs; ++i )
    {
        const auto text = reader.require( "an output definition" );
        const auto nums = parse_numbers( text, reader.line() );
        if ( nums.size() != 1 )
            throw parse_error( reader.line(), "malformed output line" );
        check_lit( nums[ 0 ], reader.line() );
        uses.emplace_back( nums[ 0 ], reader.line() );
        outputs.push_back( nums[ 0 ] );
    }

    if ( num_bad == 1 )
    {
        const auto text = reader.require( "a bad-state definition" );
        const auto nums = parse_numbers( text, reader.line() );
        if ( nums.size() != 1 )
            throw parse_error( reader.line(), "malformed bad-state line" );
        check_lit( nums[ 0 ], reader.line() );
        uses.emplace_back( nums[ 0 ], reader.line() );
        c.bad = nums[ 0 ];
    }
    else
    {
        c.bad = outputs.front();
    }

    for ( std::uint32_t i = 0; i < num_ands; ++i )
    {
        const auto text = reader.require( "an AND definition" );
        const auto nums = parse_numbers( text, reader.line() );
        if ( nums.size() != 3 )
            throw parse_error( reader.line(), "malformed AND line" );
        define( nums[ 0 ], reader.line(), "AND" );
        check_lit( nums[ 1 ], reader.line() );
        check_lit( nums[ 2 ], reader.line() );
        if ( nums[ 1 ] >= nums[ 0 ] || nums[ 2 ] >= nums[ 0 ] )
            throw parse_error( reader.line(), "AND gate " + std::to_string( nums[ 0 ] ) +
                                                  " violates topological order (operands must be smaller)" );
        uses.emplace_back( nums[ 1 ], reader.line() );
        uses.emplace_back( nums[ 2 ], reader.line() );
        c.ands.push_back( { nums[ 0 ], nums[ 1 ], nums[ 2 ] } );
    }

    for ( const auto& [ lit, line ] : uses )
        if ( lit >= 2 && defined_at[ lit / 2 ] == 0 )
            throw parse_error( line, "literal " + std::to_string( lit ) + " refers to an undefined variable" );

    auto text = std::string{};
    bool in_comments = false;
    while ( reader.next( text ) )
    {
        if ( in_comments )
        {
            c.comments.push_back( text );
            continue;
        }
        if ( text == "c" )
        {
            in_comments = true;
            continue;
        }
        if ( text.empty() )
            continue;

        const auto space = text.find( ' ' );
        const auto key = text.substr( 0, space );
        const bool well_formed = key.size() >= 2 && std::string_view( "ilob" ).find( key[ 0 ] ) != std::string_view::npos &&
                                 std::ranges::all_of( key.substr( 1 ), []( char ch ) { return ch >= '0' && ch <= '9'; } );
        if ( !well_formed || space == std::string::npos )
            throw parse_error( reader.line(), "unexpected content after definitions: '" + text + "'" );
        c.symbols[ key ] = text.substr( space + 1 );
    }

    std::ranges::sort( c.ands, {}, &and_def::lhs );
    return c;
}

circuit parse_aag( std::string_view text )
{
    auto in = std::istringstream{ std::string( text ) };
    return parse_aag( in );
}

circuit read_aag_file( const std::string& path )
{
    auto in = std::ifstream{ path };
    if ( !in )
        throw std::runtime_error( "cannot open '" + path + "'" );
    return parse_aag( in );
}

void write_aag( std::ostream& out, const circuit& c )
{
    out << "aag " << c.max_var << ' ' << c.inputs.size() << ' ' << c.latches.size() << " 0 " << c.ands.size()
        << " 1\n";
    for ( const auto i : c.inputs )
        out << i << '\n';
    for ( const auto& l : c.latches )
        out << l.lit << ' ' << l.next << ' ' << ( l.reset ? 1 : 0 ) << '\n';
    out << c.bad << '\n';
    for ( const auto& a : c.ands )
        out << a.lhs << ' ' << a.rhs0 << ' ' << a.rhs1 << '\n';
    for ( const auto& [ key, name ] : c.symbols )
        out << key << ' ' << name << '\n';
    if ( !c.comments.empty() )
    {
        out << "c\n";
        for ( const auto& line : c.comments )
            out << line << '\n';
    }
}

simulation simulate( const circuit& c, const std::vector< bool >& latches, const std::vector< bool >& inputs )
{
    auto values = std::vector< bool >( c.max_var + 1, false );
    for ( std::size_t i = 0; i < c.inputs.size(); ++i )
        values[ c.inputs[ i ] / 2 ] = inputs[ i ];
    for ( std::size_t i = 0; i < c.latches.size(); ++i )
        values[ c.latches[ i ].lit / 2 ] = latches[ i ];

    auto eval = [ & ]( aig_literal lit ) { return values[ lit / 2 ] != ( ( lit & 1u ) != 0 ); };
    // ands are sorted by lhs, which is a topological order.
    for ( const auto& a : c.ands )
        values[ a.lhs / 2 ] = eval( a.rhs0 ) && eval( a.rhs1 );

    auto sim = simulation{};
    for ( const auto& l : c.latches )
        sim.next_latches.push_back( eval( l.next ) );
    sim.bad = eval( c.bad );
    return sim;
}

namespace
{

// Variables in the transitive fan-in of lit.
std::vector< bool > cone_of( const circuit& c, aig_literal lit )
{
    auto and_of = std::unordered_map< std::uint32_t, const and_def* >{};
    for ( const auto& a : c.ands )
        and_of[ a.lhs / 2 ] = &a;

    auto in_cone = std::vector< bool >( c.max_var + 1, false );
    auto stack = std::vector< std::uint32_t >{ lit / 2 };
    while ( !stack.empty() )
    {
        const auto v = stack.back();
        stack.pop_back();
        if ( v == 0 || in_cone[ v ] )
            continue;
        in_cone[ v ] = true;
        if ( const auto it = and_of.find( v ); it != and_of.end() )
        {
            stack.push_back( it->second->rhs0 / 2 );
            stack.push_back( it->second->rhs1 / 2 );
        }
    }
    return in_cone;
}

class encoder
{
    const circuit& _c;
    transition_system::parts& _p;

public:
    encoder( const circuit& c, transition_system::parts& p ) : _c{ c }, _p{ p } {}

    var fresh() { return var{ static_cast< std::uint32_t >( _p.num_vars++ ) }; }

    static void tseitin( cnf& out, const and_gate& g )
    {
        const auto o = literal{ g.out };
        out.push_back( { !o, g.a } );
        out.push_back( { !o, g.b } );
        out.push_back( { o, !g.a, !g.b } );
    }

    // Encodes the ANDs selected by `include` on top of the leaf mapping; gates
    // are appended to `gates` and their clauses to `clauses`.
    void encode_copy( std::vector< signal >& map, const std::vector< bool >* include,
                      std::vector< and_gate >& gates, cnf& clauses )
    {
        auto sig = [ & ]( aig_literal lit ) {
            const auto s = map[ lit / 2 ];
            return ( lit & 1u ) != 0 ? !s : s;
        };

        for ( const auto& a : _c.ands )
        {
            if ( include && !( *include )[ a.lhs / 2 ] )
                continue;

            const auto x = sig( a.rhs0 );
            const auto y = sig( a.rhs1 );
            auto& out = map[ a.lhs / 2 ];

            if ( ( x.constant && !x.value ) || ( y.constant && !y.value ) )
                out = signal::of( false );
            else if ( x.constant )
                out = y;
            else if ( y.constant )
                out = x;
            else if ( x.lit == y.lit )
                out = x;
            else if ( x.lit == !y.lit )
                out = signal::of( false );
            else
            {
                const auto g = and_gate{ fresh(), x.lit, y.lit };
                gates.push_back( g );
                tseitin( clauses, g );
                out = signal::of( literal{ g.out } );
            }
        }
    }
};

circuit with_registered_bad( const circuit& c )
{
    auto out = c;
    const auto v = ++out.max_var;
    out.latches.push_back( { 2 * v, c.bad, false } );
    out.bad = 2 * v;
    return out;
}

} // namespace

transition_system encode( const circuit& source, std::string name )
{
    const auto cone = cone_of( source, source.bad );
    const bool bad_reads_inputs =
        std::ranges::any_of( source.inputs, [ & ]( aig_literal i ) { return cone[ i / 2 ]; } );
    const auto c = bad_reads_inputs ? with_registered_bad( source ) : source;
    const auto state_cone = bad_reads_inputs ? cone_of( c, c.bad ) : cone;

    auto p = transition_system::parts{};
    p.name = std::move( name );
    p.num_latches = c.latches.size();
    p.num_inputs = c.inputs.size();
    p.num_vars = 2 * p.num_latches + p.num_inputs;
    p.original_latches = source.latches.size();

    for ( std::size_t i = 0; i < c.latches.size(); ++i )
    {
        p.init_values.push_back( c.latches[ i ].reset );
        p.init.push_back( { literal{ var{ static_cast< std::uint32_t >( i ) }, !c.latches[ i ].reset } } );
        const auto it = c.symbols.find( "l" + std::to_string( i ) );
        p.latch_names.push_back( it == c.symbols.end() ? std::string{} : it->second );
    }
    for ( std::size_t i = 0; i < c.inputs.size(); ++i )
    {
        const auto it = c.symbols.find( "i" + std::to_string( i ) );
        p.input_names.push_back( it == c.symbols.end() ? std::string{} : it->second );
    }

    auto enc = encoder{ c, p };
    const auto latch_lit = [ & ]( std::size_t i, bool next ) {
        return literal{ var{ static_cast< std::uint32_t >( next ? i + p.num_latches : i ) } };
    };

    // Transition copy over current-state and input variables.
    auto trans_map = std::vector< signal >( c.max_var + 1, signal::of( false ) );
    for ( std::size_t i = 0; i < c.latches.size(); ++i )
        trans_map[ c.latches[ i ].lit / 2 ] = signal::of( latch_lit( i, false ) );
    for ( std::size_t i = 0; i < c.inputs.size(); ++i )
        trans_map[ c.inputs[ i ] / 2 ] =
            signal::of( literal{ var{ static_cast< std::uint32_t >( 2 * p.num_latches + i ) } } );
    enc.encode_copy( trans_map, nullptr, p.trans_gates, p.trans );

    for ( std::size_t i = 0; i < c.latches.size(); ++i )
    {
        const auto next_lit = c.latches[ i ].next;
        const auto f = ( next_lit & 1u ) != 0 ? !trans_map[ next_lit / 2 ] : trans_map[ next_lit / 2 ];
        const auto n = latch_lit( i, true );
        p.next_functions.push_back( f );
        if ( f.constant )
            p.trans.push_back( { f.value ? n : !n } );
        else
        {
            p.trans.push_back( { !n, f.lit } );
            p.trans.push_back( { n, !f.lit } );
        }
    }

    // Property cone, once on current and once on next-state variables.
    const auto encode_bad = [ & ]( bool next, std::vector< and_gate >& gates, cnf& clauses ) -> std::optional< literal > {
        auto map = std::vector< signal >( c.max_var + 1, signal::of( false ) );
        for ( std::size_t i = 0; i < c.latches.size(); ++i )
            map[ c.latches[ i ].lit / 2 ] = signal::of( latch_lit( i, next ) );
        enc.encode_copy( map, &state_cone, gates, clauses );

        const auto bad = ( c.bad & 1u ) != 0 ? !map[ c.bad / 2 ] : map[ c.bad / 2 ];
        if ( !bad.constant )
            return bad.lit;
        if ( !bad.value )
            return std::nullopt;
        const auto t = enc.fresh();
        clauses.push_back( { literal{ t } } );
        p.bad_always = true;
        return literal{ t };
    };

    p.bad_current = encode_bad( false, p.prop_gates, p.prop_defs );
    auto next_gates = std::vector< and_gate >{};
    p.bad_next = encode_bad( true, next_gates, p.trans );

    return transition_system{ std::move( p ) };
}

} // namespace ic4::aiger
