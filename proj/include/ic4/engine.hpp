#pragma once

#include "ic4/logic.hpp"
#include "ic4/oracle.hpp"
#include "ic4/reach_store.hpp"
#include "ic4/sat.hpp"
#include "ic4/stats.hpp"
#include "ic4/transition_system.hpp"
#include "ic4/verdict.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ic4
{

// Raised when an internal consistency check fails.
class engine_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// Raised when a run generates more reachable states than its effort mode allows.
class bound_violation : public engine_error
{
public:
    using engine_error::engine_error;
};

enum class effort
{
    minimal,
    maximal,
    heuristic
};

[[nodiscard]] const char* effort_name( effort e );

struct effort_mode
{
    effort kind = effort::minimal;
    std::uint64_t conflicts = 10'000;    // per condition-fixing attempt (heuristic)
    std::size_t unpush_per_frame = 3;    // proofs before switching to plain pushing (heuristic)

    [[nodiscard]] static effort_mode minimal() { return {}; }
    [[nodiscard]] static effort_mode maximal() { return { effort::maximal }; }
    // Throws std::invalid_argument on a zero budget.
    [[nodiscard]] static effort_mode heuristic( std::uint64_t conflicts = 10'000, std::size_t unpush_per_frame = 3 );
};

struct engine_options
{
    std::size_t max_frames = 1000;
    std::optional< std::chrono::milliseconds > time_limit;
    std::uint64_t seed = 0;
    bool reuse = true;
    // When set, frame and store soundness are checked against this map after
    // every major phase.
    const oracle::reach_map* self_check = nullptr;
};

// Local proof setting: prove that no trace of constraint states reaches
// `target`. Every current-state side is conjoined with P and `constraint`.
struct local_target
{
    state target;
    std::vector< clause > constraint;
};

// F_0 .. F_top, delta-encoded: a clause stored at level j belongs to every
// F_i with 1 <= i <= j. F_0 is I and holds no clauses here.
class frame_seq
{
    std::vector< std::vector< clause > > _delta{ 2 };

public:
    [[nodiscard]] std::size_t levels() const { return _delta.size(); }
    void ensure( std::size_t level );

    [[nodiscard]] const std::vector< clause >& delta( std::size_t level ) const { return _delta.at( level ); }

    // Explicit clause set of F_i, i >= 1, in canonical order.
    [[nodiscard]] std::vector< clause > frame( std::size_t i ) const;

    // True iff a clause at level >= `level` is falsified by every state of c.
    [[nodiscard]] bool excludes( const cube& c, std::size_t level ) const;

    [[nodiscard]] bool contains( const clause& cl, std::size_t level ) const;

    // Adds cl at `level`, dropping clauses at levels <= level that cl subsumes.
    void insert( const clause& cl, std::size_t level );
    bool erase( const clause& cl, std::size_t level );

    [[nodiscard]] std::size_t total() const;
};

struct proof_obligation
{
    cube c;
    std::size_t level = 0;
    std::size_t depth = 0;
    std::optional< std::size_t > successor; // index into the obligation pool
    std::vector< bool > input;              // drives c into the successor or the target
    bool into_target = false;
};

struct blocked {};
struct reached
{
    trace t;
};
struct exhausted {};
using block_result = std::variant< blocked, reached, exhausted >;

struct holds {};
struct fails
{
    state witness;
};
using push_condition = std::variant< holds, fails, exhausted >;

struct fixed_point
{
    std::size_t level;
};
struct not_yet {};
using push_result = std::variant< fixed_point, not_yet >;

struct invariant_at
{
    std::size_t level;
};
struct unpushable
{
    clause c;
    trace t;
};
struct counterexample
{
    trace t;
};
using push_outcome = std::variant< invariant_at, unpushable, exhausted, counterexample >;

class engine
{
public:
    // `store` may be shared between engines on the same system; a private
    // store is used when it is null.
    engine( const transition_system& ts, engine_options opts, reach_store* store = nullptr,
            std::optional< local_target > local = std::nullopt );
    ~engine();
    engine( const engine& ) = delete;
    engine& operator=( const engine& ) = delete;

    verdict prove_ic3();
    verdict prove_ic4( effort_mode mode );

    block_result block( proof_obligation root, std::optional< std::uint64_t > budget = std::nullopt );
    clause generalize( const cube& c, std::size_t level );
    push_result push_standard( std::size_t from, std::size_t to );
    push_condition check_pushing_condition( const clause& cl, std::size_t level,
                                            std::optional< std::uint64_t > budget = std::nullopt );
    push_outcome new_push( effort_mode mode );

    // Sets the frontier k, opening F_0 .. F_{k+1}.
    void set_frontier( std::size_t k );
    [[nodiscard]] std::size_t frontier() const { return _k; }

    // Inserts a clause without any inductiveness check. Only for tests that
    // need a deliberately over-strong frame.
    void inject_clause( const clause& cl, std::size_t level );

    [[nodiscard]] const frame_seq& frames() const { return _frames; }
    [[nodiscard]] const reach_store& store() const { return *_store; }
    [[nodiscard]] const run_stats& stats() const { return _stats; }
    [[nodiscard]] const std::set< std::pair< clause, std::size_t > >& unpushable_clauses() const
    {
        return _unpushable;
    }

    // Checks frame and store soundness against a reachable-state map;
    // throws engine_error on a violation.
    void check_soundness( const oracle::reach_map& rm ) const;

private:
    struct timeout {};

    verdict run( std::optional< effort_mode > mode );
    verdict make_safe( std::size_t level );
    void rebuild_solver();
    void check_time() const;
    void self_check() const;

    [[nodiscard]] std::vector< literal > frame_assumptions( std::size_t level );
    [[nodiscard]] std::vector< literal > target_next() const;
    [[nodiscard]] bool target_initial() const;
    [[nodiscard]] bool state_hits_target( const state& s ) const;

    sat::sat_result query( std::vector< literal > assumptions, const char* category,
                           std::optional< std::uint64_t > budget );
    cube lift( const state& pred, const std::vector< bool >& input, const std::optional< cube >& succ );
    std::optional< bool > relatively_inductive( const clause& cl, std::size_t level,
                                                std::optional< std::uint64_t > budget );
    void add_clause( const clause& cl, std::size_t level );
    void move_clause( const clause& cl, std::size_t from );
    std::size_t push_forward( const clause& cl, std::size_t level, std::size_t limit );
    [[nodiscard]] std::optional< trace > truncate_at_bad( const trace& t ) const;
    trace build_trace( const std::vector< proof_obligation >& pool, std::size_t index ) const;

    enum class attempt_result
    {
        pushed,
        proven_unpushable,
        blocked_state,
        budget_out,
        found_cex
    };
    attempt_result attempt_fix( const clause& cl, std::size_t level, std::optional< std::uint64_t > budget );
    std::optional< verdict > fix_lower_levels();
    void check_state_bounds() const;

    const transition_system& _ts;
    engine_options _opts;
    std::unique_ptr< reach_store > _own_store;
    reach_store* _store;
    std::optional< local_target > _local;

    frame_seq _frames;
    std::size_t _k = 1;
    std::unique_ptr< sat::solver_handle > _solver;
    std::unique_ptr< sat::solver_handle > _lifter;
    std::size_t _temporaries = 0;

    std::set< std::pair< clause, std::size_t > > _unpushable;
    std::vector< std::pair< clause, std::size_t > > _pending; // maximal-mode lower-level fixes
    bool _maximal = false;
    std::optional< trace > _last_trace;
    std::optional< trace > _cex;

    std::chrono::steady_clock::time_point _start;
    std::size_t _store_base = 0;
    run_stats _stats;
};

} // namespace ic4
