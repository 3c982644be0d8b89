#include "ue2/chart.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <regex>

using namespace ue2;

namespace {

std::vector<std::pair<int, int>> circles(const std::string& svg)
{
    std::vector<std::pair<int, int>> r;
    std::regex re("<circle cx=\"(-?[0-9]+)\" cy=\"(-?[0-9]+)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it)
        r.push_back({std::stoi((*it)[1]), std::stoi((*it)[2])});
    return r;
}

Chart one_dot()
{
    Chart c;
    c.s_max = 0;
    c.t_max = 2;
    c.D = 6;
    c.entries = {ChartEntry{0, 1, 0}, ChartEntry{0, 2, 1}};
    return c;
}

}  // namespace

TEST(Chart, EmptyChartInEveryFormat)
{
    Chart c;
    auto j = nlohmann::json::parse(chart_emit(c, ChartFormat::Json));
    EXPECT_TRUE(j["entries"].empty());
    std::string svg = chart_emit(c, ChartFormat::Svg);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_TRUE(circles(svg).empty());
    EXPECT_NE(chart_emit(c, ChartFormat::Ascii).find("(empty)"), std::string::npos);
}

TEST(Chart, OneDotAtTMinusS)
{
    Chart c = one_dot();
    std::string svg = chart_emit(c, ChartFormat::Svg);
    auto dots = circles(svg);
    ASSERT_EQ(dots.size(), 1u);
    // x = t - s = 2 is the third column from x = 0; s = 0 is the bottom row
    Chart two = c;
    two.s_max = 1;
    two.entries.push_back(ChartEntry{1, 3, 1});
    auto dots2 = circles(chart_emit(two, ChartFormat::Svg));
    ASSERT_EQ(dots2.size(), 2u);
    EXPECT_EQ(dots2[0].first, dots2[1].first);   // both at x = 2
    EXPECT_GT(dots2[0].second, dots2[1].second); // s = 1 drawn above s = 0
    Chart shifted = c;
    shifted.entries = {ChartEntry{0, 1, 1}};
    auto d1 = circles(chart_emit(shifted, ChartFormat::Svg));
    ASSERT_EQ(d1.size(), 1u);
    EXPECT_LT(d1[0].first, dots[0].first);
}

TEST(Chart, JsonRoundTrip)
{
    Chart c = one_dot();
    c.kind = "gh";
    c.tower_level = 3;
    c.fringe = FringeCell{2, 1, "dims-only"};
    std::string text = chart_emit(c, ChartFormat::Json);
    Chart back = chart_from_json(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(chart_emit(back, ChartFormat::Json), text);
}

TEST(Chart, JsonKeyOrder)
{
    std::string text = chart_emit(one_dot(), ChartFormat::Json);
    const std::vector<std::string> keys{"\"p\"", "\"kind\"", "\"window\"", "\"D\"", "\"entries\""};
    size_t at = 0;
    for (auto& k : keys) {
        size_t pos = text.find(k);
        ASSERT_NE(pos, std::string::npos) << k;
        EXPECT_GE(pos, at) << k;
        at = pos;
    }
}

TEST(Chart, BadInput)
{
    EXPECT_THROW(chart_from_json("{"), std::invalid_argument);
    EXPECT_THROW(chart_from_json("{\"p\":2}"), std::invalid_argument);
    EXPECT_THROW(parse_chart_format("png"), std::invalid_argument);
}

TEST(Chart, AsciiGrid)
{
    std::string a = chart_emit(one_dot(), ChartFormat::Ascii);
    EXPECT_NE(a.find("  0 |"), std::string::npos);
    EXPECT_NE(a.find("(t-s)"), std::string::npos);
}
