#pragma once

#include "erto/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erto {

/**
 * One protocol event. Written as a comma-separated line
 *
 *   time,node,event,packet,power,rank
 *
 * with time in seconds (9 decimals), power in watts (6 decimals), and rank
 * the plan position (0 where it does not apply). Event kinds:
 * gen, tx, rx, deliver, dup, cancel, drop_<reason>.
 */
struct TraceEvent
{
    double time{0.0};
    NodeId node{kNoNode};
    std::string kind;
    std::uint64_t packet{0};
    double power{0.0};
    int rank{0};

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

inline constexpr std::string_view kTraceHeader = "time,node,event,packet,power,rank";

std::string format_trace_line(const TraceEvent& e);
std::optional<TraceEvent> parse_trace_line(std::string_view line);
std::vector<TraceEvent> parse_trace(std::string_view text);

} // namespace erto
