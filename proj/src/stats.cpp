#include "ic4/stats.hpp"

#include <json.hpp>

namespace ic4
{

std::string to_json_line( const run_stats& s )
{
    auto j = nlohmann::ordered_json{};
    j[ "engine" ] = s.engine;
    j[ "model" ] = s.model;
    j[ "verdict" ] = s.verdict;
    j[ "frames_opened" ] = s.frames_opened;
    j[ "frame_convention" ] = frame_convention;
    j[ "clauses_per_frame" ] = s.clauses_per_frame;
    j[ "sat_calls" ] = s.sat_calls;
    j[ "obligations" ] = s.obligations;
    if ( !s.effort.empty() )
    {
        j[ "effort" ] = s.effort;
        j[ "unpushable" ] = s.unpushable;
        j[ "reach_generated" ] = s.reach_generated;
        j[ "reuse_hits" ] = s.reuse_hits;
    }
    if ( s.pd )
    {
        j[ "pd" ] = { { "q_generated", s.pd->q_generated },
                      { "q_inductive", s.pd->q_inductive },
                      { "literals_removed", s.pd->literals_removed } };
    }
    return j.dump();
}

} // namespace ic4
