#include "ue2/chart.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <map>

namespace ue2 {

std::optional<int> Chart::dim(int s, int t) const
{
    for (auto& e : entries)
        if (e.s == s && e.t == t)
            return e.dim;
    return std::nullopt;
}

ChartFormat parse_chart_format(const std::string& s)
{
    if (s == "json")
        return ChartFormat::Json;
    if (s == "svg")
        return ChartFormat::Svg;
    if (s == "ascii")
        return ChartFormat::Ascii;
    throw std::invalid_argument(fmt::format("unknown chart format '{}'", s));
}

namespace {

std::string emit_json(const Chart& c)
{
    nlohmann::ordered_json j;
    j["p"] = c.p;
    j["kind"] = c.kind;
    j["window"] = {{"s_max", c.s_max}, {"t_max", c.t_max}};
    j["D"] = c.D;
    if (c.tower_level)
        j["tower_level"] = *c.tower_level;
    j["entries"] = nlohmann::ordered_json::array();
    for (auto& e : c.entries)
        j["entries"].push_back({{"s", e.s}, {"t", e.t}, {"dim", e.dim}});
    if (c.fringe)
        j["fringe"] = {{"s", 0}, {"t", 0}, {"card", c.fringe->card}, {"dim", c.fringe->dim}, {"flag", c.fringe->flag}};
    return j.dump(2) + "\n";
}

std::string emit_ascii(const Chart& c)
{
    std::map<std::pair<int, int>, int> cell;  // (s, t - s) -> dim
    int xmax = 0;
    for (auto& e : c.entries) {
        cell[{e.s, e.t - e.s}] = e.dim;
        xmax = std::max(xmax, e.t - e.s);
    }
    int xmin = 0;
    for (auto& e : c.entries)
        xmin = std::min(xmin, e.t - e.s);
    std::string out = fmt::format("{} chart p={} s<={} t<={} D={}", c.kind, c.p, c.s_max, c.t_max, c.D);
    if (c.tower_level)
        out += fmt::format(" level={}", *c.tower_level);
    out += "\n";
    if (c.entries.empty())
        return out + "(empty)\n";
    for (int s = c.s_max; s >= 0; --s) {
        out += fmt::format("{:>3} |", s);
        for (int x = xmin; x <= xmax; ++x) {
            auto it = cell.find({s, x});
            if (it == cell.end())
                out += "   ";
            else if (it->second == 0)
                out += "  .";
            else
                out += fmt::format("{:>3}", it->second);
        }
        out += "\n";
    }
    out += "    +" + std::string(size_t(3 * (xmax - xmin + 1)), '-') + "\n     ";
    for (int x = xmin; x <= xmax; ++x)
        out += fmt::format("{:>3}", x);
    out += "   (t-s)\n";
    if (c.fringe)
        out += fmt::format("(0,0): {} maps, {}\n", c.fringe->card < 0 ? std::string("too many") : std::to_string(c.fringe->card),
                           c.fringe->flag);
    return out;
}

std::string emit_svg(const Chart& c)
{
    const int unit = 40, margin = 40;
    int xmin = 0, xmax = 0;
    for (auto& e : c.entries) {
        xmin = std::min(xmin, e.t - e.s);
        xmax = std::max(xmax, e.t - e.s);
    }
    const int w = margin * 2 + unit * (xmax - xmin + 1);
    const int h = margin * 2 + unit * (c.s_max + 1);
    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", w, h, w, h);
    out += fmt::format("<title>{} chart p={}</title>\n", c.kind, c.p);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", w, h);
    auto px = [&](int x) { return margin + unit * (x - xmin) + unit / 2; };
    auto py = [&](int s) { return h - margin - unit * s - unit / 2; };
    // axes
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", margin, h - margin, w - margin,
                       h - margin);
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", margin, margin, margin,
                       h - margin);
    for (int x = xmin; x <= xmax; ++x)
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n", px(x),
                           h - margin + 14, x);
    for (int s = 0; s <= c.s_max; ++s)
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n", margin - 6, py(s) + 3,
                           s);
    for (auto& e : c.entries) {
        if (e.dim <= 0)
            continue;
        const int shown = std::min(e.dim, 4);
        for (int k = 0; k < shown; ++k) {
            const int cx = px(e.t - e.s) + (k - (shown - 1) / 2) * 7 - ((shown - 1) % 2) * 3;
            out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>\n", cx, py(e.s));
        }
        if (e.dim > 4)
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"9\">{}</text>\n", px(e.t - e.s) + 8, py(e.s) - 6, e.dim);
    }
    out += "</svg>\n";
    return out;
}

}  // namespace

std::string chart_emit(const Chart& c, ChartFormat f)
{
    switch (f) {
    case ChartFormat::Json:
        return emit_json(c);
    case ChartFormat::Svg:
        return emit_svg(c);
    case ChartFormat::Ascii:
        return emit_ascii(c);
    }
    return {};
}

Chart chart_from_json(const std::string& text)
{
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(fmt::format("chart json: {}", e.what()));
    }
    Chart c;
    try {
        c.p = j.at("p").get<int>();
        c.kind = j.at("kind").get<std::string>();
        c.s_max = j.at("window").at("s_max").get<int>();
        c.t_max = j.at("window").at("t_max").get<int>();
        c.D = j.at("D").get<int>();
        if (j.contains("tower_level"))
            c.tower_level = j["tower_level"].get<int>();
        for (auto& e : j.at("entries"))
            c.entries.push_back(ChartEntry{e.at("s").get<int>(), e.at("t").get<int>(), e.at("dim").get<int>()});
        if (j.contains("fringe")) {
            auto& f = j["fringe"];
            c.fringe = FringeCell{f.at("card").get<long long>(), f.at("dim").get<int>(), f.at("flag").get<std::string>()};
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(fmt::format("chart json: {}", e.what()));
    }
    return c;
}

}  // namespace ue2
