#pragma once

#include "ic4/logic.hpp"
#include "ic4/transition_system.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ic4
{

// s_0 .. s_n with inputs x_0 .. x_{n-1}, where x_j drives s_j -> s_{j+1}.
struct trace
{
    std::vector< state > states;
    std::vector< std::vector< bool > > inputs;

    [[nodiscard]] std::size_t transitions() const { return inputs.size(); }
};

// The clause set, conjoined with P when includes_property is set.
struct invariant
{
    std::vector< clause > clauses;
    bool includes_property = true;
};

struct safe
{
    invariant inv;
    std::size_t frames = 0;
};

struct unsafe
{
    trace cex;
};

struct unknown
{
    std::string reason;
};

using verdict = std::variant< safe, unsafe, unknown >;

[[nodiscard]] inline bool is_safe( const verdict& v ) { return std::holds_alternative< safe >( v ); }
[[nodiscard]] inline bool is_unsafe( const verdict& v ) { return std::holds_alternative< unsafe >( v ); }
[[nodiscard]] const char* verdict_name( const verdict& v );

// Replays the inputs from the initial state by evaluation. Returns the
// resulting trace (the given states are ignored) or nullopt if the input
// vectors have the wrong width.
[[nodiscard]] trace simulate_trace( const transition_system& ts, const state& start,
                                    const std::vector< std::vector< bool > >& inputs );

// First index at which the trace is not a valid path from an initial state:
// 0 when s_0 is not initial, j + 1 when s_j -x_j-> s_{j+1} is not a transition.
[[nodiscard]] std::optional< std::size_t > first_invalid_step( const transition_system& ts, const trace& t );

} // namespace ic4
