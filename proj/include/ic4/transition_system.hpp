#pragma once

#include "ic4/logic.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ic4
{

using cnf = std::vector< std::vector< literal > >;

// Either a Boolean constant or a literal of the CNF variable table.
struct signal
{
    bool constant = true;
    bool value = false;
    literal lit{};

    [[nodiscard]] static signal of( literal l ) { return { false, false, l }; }
    [[nodiscard]] static signal of( bool b ) { return { true, b, literal{} }; }

    [[nodiscard]] signal operator!() const { return constant ? of( !value ) : of( !lit ); }

    bool operator==( const signal& ) const = default;
};

// out <-> a & b, both operands non-constant after folding.
struct and_gate
{
    var out;
    literal a;
    literal b;
};

// CNF-level safety problem. Variable layout for L latches and N inputs:
//   [0, L)            state-current
//   [L, 2L)           state-next, prime(v) = v + L
//   [2L, 2L + N)      inputs
//   [2L + N, ...)     auxiliary Tseitin variables
// The property P is prop_defs together with the unit clause (!bad_current);
// the property cone has separate copies on current and next variables, the
// next copy being part of trans. Auxiliaries in either copy are functionally
// determined by the state variables they range over.
class transition_system
{
public:
    struct parts
    {
        std::string name;
        std::size_t num_latches = 0;
        std::size_t num_inputs = 0;
        std::size_t num_vars = 0;
        std::vector< bool > init_values;
        cnf init;
        cnf trans;
        cnf prop_defs;
        std::optional< literal > bad_current; // nullopt: P is the constant true
        std::optional< literal > bad_next;
        bool bad_always = false;              // bad literals are auxiliaries forced true
        std::vector< and_gate > trans_gates;  // topological order
        std::vector< and_gate > prop_gates;   // current copy of the property cone
        std::vector< signal > next_functions; // one per latch
        std::size_t original_latches = 0;     // latches present in the source model
        std::vector< std::string > latch_names;
        std::vector< std::string > input_names;
    };

    transition_system() = default;
    explicit transition_system( parts p );

    [[nodiscard]] const std::string& name() const { return _p.name; }
    [[nodiscard]] std::size_t num_latches() const { return _p.num_latches; }
    [[nodiscard]] std::size_t num_inputs() const { return _p.num_inputs; }
    [[nodiscard]] std::size_t num_vars() const { return _p.num_vars; }
    [[nodiscard]] std::size_t original_latches() const { return _p.original_latches; }

    [[nodiscard]] var_role role( var v ) const;

    [[nodiscard]] var latch_var( std::size_t i ) const { return var{ static_cast< std::uint32_t >( i ) }; }
    [[nodiscard]] var next_var( std::size_t i ) const
    {
        return var{ static_cast< std::uint32_t >( i + _p.num_latches ) };
    }
    [[nodiscard]] var input_var( std::size_t i ) const
    {
        return var{ static_cast< std::uint32_t >( i + 2 * _p.num_latches ) };
    }

    // state-current -> state-next; other literals are a precondition violation.
    [[nodiscard]] literal prime( literal lit ) const;
    [[nodiscard]] literal unprime( literal lit ) const;
    [[nodiscard]] std::vector< literal > prime( std::span< const literal > lits ) const;

    [[nodiscard]] const cnf& init() const { return _p.init; }
    [[nodiscard]] const cnf& trans() const { return _p.trans; }
    [[nodiscard]] const cnf& prop_defs() const { return _p.prop_defs; }
    [[nodiscard]] const std::optional< literal >& bad_current() const { return _p.bad_current; }
    [[nodiscard]] const std::optional< literal >& bad_next() const { return _p.bad_next; }

    // P as a CNF: the current-copy cone plus (!bad).
    [[nodiscard]] cnf property() const;

    [[nodiscard]] const state& init_state() const { return _init_state; }
    [[nodiscard]] bool is_initial( const state& s ) const { return s == _init_state; }

    // True iff some initial state lies in the cube.
    [[nodiscard]] bool intersects_init( const cube& c ) const;
    // True iff every initial state satisfies the clause.
    [[nodiscard]] bool init_implies( const clause& cl ) const;

    // Successor by direct circuit evaluation.
    [[nodiscard]] state step( const state& s, const std::vector< bool >& inputs ) const;
    [[nodiscard]] bool is_bad( const state& s ) const;
    [[nodiscard]] bool satisfies_property( const state& s ) const { return !is_bad( s ); }

    [[nodiscard]] const parts& data() const { return _p; }

private:
    parts _p;
    state _init_state;
};

// DIMACS dump of init, trans and property CNFs with one comment per variable
// describing its role ("c var 3 = latch 1 current").
void write_dimacs( std::ostream& out, const transition_system& ts );

} // namespace ic4
