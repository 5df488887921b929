#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ic4
{

// Frame counting used by frames_opened.
inline constexpr const char* frame_convention = "frames_opened = index k of the highest frame F_k built; F_0 = I";

struct pd_stats
{
    std::size_t q_generated = 0;
    std::size_t q_inductive = 0;
    std::size_t literals_removed = 0;
};

// One JSON-lines record per run. Contains no timing so that records are
// reproducible.
struct run_stats
{
    std::string engine;
    std::string model;
    std::string verdict;
    std::size_t frames_opened = 0;
    std::vector< std::size_t > clauses_per_frame; // delta sizes, index = level
    std::map< std::string, std::uint64_t > sat_calls;
    std::uint64_t obligations = 0;
    std::string effort;
    std::size_t unpushable = 0;
    std::size_t reach_generated = 0;
    std::size_t reuse_hits = 0;
    std::optional< pd_stats > pd;
};

[[nodiscard]] std::string to_json_line( const run_stats& s );

} // namespace ic4
