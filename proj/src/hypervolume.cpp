#include "erto/pareto.hpp"

#include <algorithm>

namespace erto {

namespace {

/// Area dominated by 2-D points (minimization) below ref.
double
area_2d(std::vector<std::array<double, 2>> pts, const std::array<double, 2>& ref)
{
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double ceiling = ref[1];
    for (const auto& p : pts)
    {
        if (p[1] < ceiling)
        {
            area += (ref[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    return area;
}

} // namespace

double
hypervolume(std::span<const std::array<double, 3>> points, const std::array<double, 3>& ref)
{
    std::vector<std::array<double, 3>> pts;
    for (const auto& p : points)
    {
        if (p[0] < ref[0] && p[1] < ref[1] && p[2] < ref[2])
        {
            pts.push_back(p);
        }
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; });

    // Sweep along the third objective, accumulating 2-D slices.
    double volume = 0.0;
    std::vector<std::array<double, 2>> slice;
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        slice.push_back({pts[i][0], pts[i][1]});
        const double top = i + 1 < pts.size() ? pts[i + 1][2] : ref[2];
        if (top > pts[i][2])
        {
            volume += area_2d(slice, {ref[0], ref[1]}) * (top - pts[i][2]);
        }
    }
    return volume;
}

double
hypervolume(std::span<const Solution> solutions, const std::array<double, 3>& ref)
{
    std::vector<std::array<double, 3>> pts;
    pts.reserve(solutions.size());
    for (const auto& s : solutions)
    {
        if (s.feasible)
        {
            pts.push_back(s.f);
        }
    }
    return hypervolume(pts, ref);
}

} // namespace erto
