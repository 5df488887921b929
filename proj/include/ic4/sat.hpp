#pragma once

#include "ic4/logic.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace ic4::sat
{

enum class status
{
    sat,
    unsat,
    unknown // conflict budget exhausted
};

// Operation set an incremental solver has to provide, mirroring the usual
// add / assume / solve / value / failed interface of industrial solvers. A
// replacement backend only needs to implement this class.
class incremental_solver
{
public:
    virtual ~incremental_solver() = default;

    virtual var new_var() = 0;
    [[nodiscard]] virtual std::size_t num_vars() const = 0;

    virtual void add_clause( std::span< const literal > lits ) = 0;

    // budget: maximum number of conflicts for this call, none = unlimited.
    virtual status solve( std::span< const literal > assumptions, std::optional< std::uint64_t > budget ) = 0;

    // Valid after status::sat.
    [[nodiscard]] virtual bool value( var v ) const = 0;
    // Valid after status::unsat: true iff the assumption is in the final conflict.
    [[nodiscard]] virtual bool failed( literal assumption ) const = 0;

    [[nodiscard]] virtual std::uint64_t conflicts() const = 0;
};

// Conflict-driven clause learning: two watched literals, first-UIP learning,
// VSIDS with phase saving, Luby restarts and assumption-based solving with
// final-conflict analysis. Decisions are deterministic for a given seed.
class cdcl_solver final : public incremental_solver
{
public:
    explicit cdcl_solver( std::uint64_t seed = 0 );

    var new_var() override;
    [[nodiscard]] std::size_t num_vars() const override { return _assigns.size(); }

    void add_clause( std::span< const literal > lits ) override;
    status solve( std::span< const literal > assumptions, std::optional< std::uint64_t > budget ) override;

    [[nodiscard]] bool value( var v ) const override { return _model[ v.index() ]; }
    [[nodiscard]] bool failed( literal assumption ) const override;
    [[nodiscard]] std::uint64_t conflicts() const override { return _total_conflicts; }

    [[nodiscard]] bool inconsistent() const { return !_ok; }

private:
    static constexpr std::uint8_t l_false = 0;
    static constexpr std::uint8_t l_true = 1;
    static constexpr std::uint8_t l_undef = 2;
    static constexpr std::uint32_t no_reason = 0xffffffffu;

    struct watcher
    {
        std::uint32_t cref;
        std::uint32_t blocker;
    };

    struct clause_data
    {
        std::vector< std::uint32_t > lits;
        bool learnt = false;
        bool deleted = false;
        double activity = 0;
    };

    [[nodiscard]] std::uint8_t lit_value( std::uint32_t lit ) const
    {
        const auto a = _assigns[ lit >> 1 ];
        return a == l_undef ? l_undef : static_cast< std::uint8_t >( a ^ ( lit & 1u ) );
    }
    [[nodiscard]] std::size_t decision_level() const { return _trail_lim.size(); }

    void enqueue( std::uint32_t lit, std::uint32_t reason );
    std::uint32_t propagate(); // returns conflicting clause or no_reason
    void analyze( std::uint32_t confl, std::vector< std::uint32_t >& learnt, std::size_t& bt_level );
    void analyze_final( std::uint32_t lit );
    void cancel_until( std::size_t level );
    std::uint32_t attach( std::vector< std::uint32_t > lits, bool learnt );
    std::optional< std::uint32_t > pick_branch();
    status search( std::uint64_t conflict_limit, std::optional< std::uint64_t > budget_end );
    void reduce_learnts();

    void bump_var( std::uint32_t v );
    void bump_clause( clause_data& c );
    void heap_insert( std::uint32_t v );
    void heap_up( std::size_t i );
    void heap_down( std::size_t i );
    std::uint32_t heap_pop();

    bool _ok = true;
    std::vector< clause_data > _clauses;
    std::vector< std::vector< watcher > > _watches; // by literal code: clauses watching that literal
    std::vector< std::uint8_t > _assigns;
    std::vector< std::uint32_t > _level;
    std::vector< std::uint32_t > _reason;
    std::vector< bool > _polarity; // saved phase, true = positive
    std::vector< double > _activity;
    std::vector< std::uint32_t > _heap;
    std::vector< std::int64_t > _heap_index;
    std::vector< std::uint32_t > _trail;
    std::vector< std::size_t > _trail_lim;
    std::size_t _qhead = 0;
    std::vector< std::uint32_t > _assumptions;
    std::vector< bool > _seen;
    std::vector< bool > _model;
    std::vector< bool > _failed; // by literal code
    double _var_inc = 1.0;
    double _cla_inc = 1.0;
    std::size_t _num_learnts = 0;
    std::size_t _max_learnts = 4000;
    std::uint64_t _total_conflicts = 0;
    std::mt19937_64 _rng;
};

struct sat_result
{
    status outcome = status::unknown;
    std::vector< bool > model;  // by variable index, when sat
    std::vector< literal > core; // failed assumptions, when unsat

    [[nodiscard]] bool is_sat() const { return outcome == status::sat; }
    [[nodiscard]] bool is_unsat() const { return outcome == status::unsat; }
    [[nodiscard]] bool value( var v ) const { return model[ v.index() ]; }
};

// Clause database with per-frame activation literals on top of an
// incremental solver. Clauses are never removed; a tagged clause is active
// only when its frame's activation literal is assumed.
class solver_handle
{
    std::unique_ptr< incremental_solver > _solver;
    std::map< std::size_t, literal > _activation;
    bool _record = false;
    std::vector< std::vector< literal > > _db;

public:
    // Variables 0 .. reserved_vars - 1 are created up front so that model
    // literals and solver variables share indices.
    explicit solver_handle( std::size_t reserved_vars, std::uint64_t seed = 0, bool record_clauses = false );
    solver_handle( std::unique_ptr< incremental_solver > backend, std::size_t reserved_vars,
                   bool record_clauses = false );

    void add_clause( std::span< const literal > lits, std::optional< std::size_t > tag = std::nullopt );
    void add_clause( std::initializer_list< literal > lits, std::optional< std::size_t > tag = std::nullopt )
    {
        add_clause( std::span< const literal >( lits.begin(), lits.size() ), tag );
    }

    // Literal to assume so that clauses tagged with `frame` are active.
    literal activation( std::size_t frame );

    // Adds a clause guarded by a fresh activation literal, which is returned.
    literal add_temporary( std::span< const literal > lits );
    // Permanently disables a temporary clause.
    void retire( literal act );

    sat_result solve( std::span< const literal > assumptions, std::optional< std::uint64_t > budget = std::nullopt );

    [[nodiscard]] std::uint64_t conflicts() const { return _solver->conflicts(); }
    [[nodiscard]] std::size_t num_vars() const { return _solver->num_vars(); }

    // Writes recorded clauses (requires record_clauses) in DIMACS, with
    // activation literals left as ordinary variables.
    void dump_dimacs( std::ostream& out ) const;
};

enum class copy
{
    current,
    next
};

// Projection of a model onto the current or next copy of the state
// variables, renamed to state-current indices.
[[nodiscard]] state extract_state( const std::vector< bool >& model, copy which, std::size_t num_latches );

} // namespace ic4::sat
