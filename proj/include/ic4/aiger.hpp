#pragma once

#include "ic4/transition_system.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ic4::aiger
{

// AIGER literal: 2 * variable + negation bit; 0 is false, 1 is true.
using aig_literal = std::uint32_t;

struct latch
{
    aig_literal lit = 0;
    aig_literal next = 0;
    bool reset = false;
};

struct and_def
{
    aig_literal lhs = 0;
    aig_literal rhs0 = 0;
    aig_literal rhs1 = 0;
};

struct circuit
{
    std::uint32_t max_var = 0;
    std::vector< aig_literal > inputs;
    std::vector< latch > latches;
    std::vector< and_def > ands;
    aig_literal bad = 0;

    // Symbol table keyed by "i0", "l3", "b0", ...
    std::map< std::string, std::string > symbols;
    std::vector< std::string > comments;
};

class parse_error : public std::runtime_error
{
    std::size_t _line;

public:
    parse_error( std::size_t line, const std::string& what )
        : std::runtime_error( "line " + std::to_string( line ) + ": " + what ), _line{ line } {}

    [[nodiscard]] std::size_t line() const { return _line; }
};

[[nodiscard]] circuit parse_aag( std::istream& in );
[[nodiscard]] circuit parse_aag( std::string_view text );
[[nodiscard]] circuit read_aag_file( const std::string& path );

// Writes the circuit back in ASCII form (used by the fuzz harness to dump models).
void write_aag( std::ostream& out, const circuit& c );

// Tseitin encoding into a transition system. If the bad cone depends on
// inputs, a fresh latch registering the bad signal is appended, so the
// property ranges over state variables only.
[[nodiscard]] transition_system encode( const circuit& c, std::string name = {} );

// Next-state and bad evaluation straight on the AIG, independent of encode().
struct simulation
{
    std::vector< bool > next_latches;
    bool bad = false;
};

[[nodiscard]] simulation simulate( const circuit& c, const std::vector< bool >& latches,
                                   const std::vector< bool >& inputs );

} // namespace ic4::aiger
