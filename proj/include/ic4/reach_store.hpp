#pragma once

#include "ic4/logic.hpp"
#include "ic4/transition_system.hpp"
#include "ic4/verdict.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ic4
{

// Proven-reachable states with predecessor links. Every entry is validated
// on insertion: depth-0 entries are initial, every other entry is the
// successor of its predecessor under the stored input.
class reach_store
{
public:
    struct entry
    {
        state s;
        std::size_t depth = 0;
        std::optional< std::size_t > pred;
        std::vector< bool > input; // drives pred -> this
    };

    reach_store() = default;

    // Adds the initial state at depth 0. Seeded entries are not counted as
    // generated.
    void seed( const transition_system& ts );

    // Records every state of a valid trace. A state already present keeps
    // its first entry and later states chain onto it. Returns the entry of
    // the last state. Throws std::logic_error on an invalid trace.
    std::size_t add_trace( const transition_system& ts, const trace& t );

    [[nodiscard]] std::optional< std::size_t > covers( const state& s ) const;

    // First entry (in insertion order) with depth <= max_depth falsifying cl.
    [[nodiscard]] std::optional< std::size_t > find_falsifying( const clause& cl, std::size_t max_depth ) const;

    [[nodiscard]] trace trace_to( std::size_t index ) const;

    [[nodiscard]] const entry& operator[]( std::size_t i ) const { return _entries[ i ]; }
    [[nodiscard]] const std::vector< entry >& entries() const { return _entries; }
    [[nodiscard]] std::size_t size() const { return _entries.size(); }
    [[nodiscard]] bool empty() const { return _entries.empty(); }

    // Distinct states inserted beyond the seed.
    [[nodiscard]] std::size_t generated() const { return _entries.size() - _seeded; }

private:
    std::size_t insert( const transition_system& ts, const state& s, std::optional< std::size_t > pred,
                        const std::vector< bool >& input );

    std::vector< entry > _entries;
    std::map< state, std::size_t > _index;
    std::size_t _seeded = 0;
};

} // namespace ic4
