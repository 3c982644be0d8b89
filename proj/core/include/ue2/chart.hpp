#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ue2 {

struct ChartEntry
{
    int s = 0;
    int t = 0;
    int dim = 0;
    bool operator==(const ChartEntry&) const = default;
};

// The (0,0) cell: a set of maps rather than a vector space.
struct FringeCell
{
    long long card = 0;   // -1 when the enumeration cap was hit
    int dim = 0;          // floor(log_p card)
    std::string flag;     // "hom-set" or "dims-only"
    bool operator==(const FringeCell&) const = default;
};

struct Chart
{
    int p = 2;
    std::string kind = "adams";  // adams | gh
    int s_max = 0;
    int t_max = 0;
    int D = 0;
    std::optional<int> tower_level;
    std::vector<ChartEntry> entries;  // sorted by (s, t); t >= 1
    std::optional<FringeCell> fringe;

    std::optional<int> dim(int s, int t) const;
    bool operator==(const Chart&) const = default;
};

enum class ChartFormat { Json, Svg, Ascii };

ChartFormat parse_chart_format(const std::string& s);
std::string chart_emit(const Chart& c, ChartFormat f);
Chart chart_from_json(const std::string& text);

}  // namespace ue2
