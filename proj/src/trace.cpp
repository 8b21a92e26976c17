#include "erto/trace.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cstdlib>
#include <string>

namespace erto {

std::string
format_trace_line(const TraceEvent& e)
{
    return fmt::format("{:.9f},{},{},{},{:.6f},{}", e.time, e.node, e.kind, e.packet, e.power, e.rank);
}

std::optional<TraceEvent>
parse_trace_line(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true)
    {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    if (fields.size() != 6)
    {
        return std::nullopt;
    }
    TraceEvent e;
    const std::string time(fields[0]);
    const std::string power(fields[4]);
    char* end = nullptr;
    e.time = std::strtod(time.c_str(), &end);
    if (end == time.c_str())
    {
        return std::nullopt;
    }
    e.power = std::strtod(power.c_str(), &end);
    if (end == power.c_str())
    {
        return std::nullopt;
    }
    auto to_int = [](std::string_view s, auto& out) {
        return std::from_chars(s.data(), s.data() + s.size(), out).ec == std::errc{};
    };
    if (!to_int(fields[1], e.node) || !to_int(fields[3], e.packet) || !to_int(fields[5], e.rank))
    {
        return std::nullopt;
    }
    e.kind = std::string(fields[2]);
    return e;
}

std::vector<TraceEvent>
parse_trace(std::string_view text)
{
    std::vector<TraceEvent> out;
    std::size_t start = 0;
    while (start < text.size())
    {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos)
        {
            nl = text.size();
        }
        const auto line = text.substr(start, nl - start);
        if (!line.empty() && line != kTraceHeader)
        {
            if (auto e = parse_trace_line(line))
            {
                out.push_back(std::move(*e));
            }
        }
        start = nl + 1;
    }
    return out;
}

} // namespace erto
