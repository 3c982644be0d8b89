#include "config.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace ue2::cli {

namespace {

template <class T>
void take(const nlohmann::json& j, const char* key, T& dst)
{
    if (!j.contains(key))
        return;
    try {
        dst = j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument(fmt::format("config: key '{}' has the wrong type", key));
    }
}

template <class T>
void over(const std::optional<T>& flag, T& dst)
{
    if (flag)
        dst = *flag;
}

}  // namespace

RunConfig resolve_config(const std::string& config_path, const FlagValues& flags)
{
    RunConfig c;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in)
            throw std::invalid_argument(fmt::format("config: cannot open {}", config_path));
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(fmt::format("config: {}", e.what()));
        }
        if (!j.is_object())
            throw std::invalid_argument("config: top level must be an object");
        static const char* known[] = {"p", "D", "smax", "tmax", "window_L", "window_K", "tower_max", "format", "out"};
        for (auto it = j.begin(); it != j.end(); ++it)
            if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
                throw std::invalid_argument(fmt::format("config: unknown key '{}'", it.key()));
        take(j, "p", c.p);
        take(j, "D", c.D);
        take(j, "smax", c.s_max);
        take(j, "tmax", c.t_max);
        take(j, "window_L", c.window_L);
        take(j, "window_K", c.window_K);
        take(j, "tower_max", c.tower_max);
        take(j, "format", c.format);
        take(j, "out", c.out);
    }
    over(flags.p, c.p);
    over(flags.D, c.D);
    over(flags.s_max, c.s_max);
    over(flags.t_max, c.t_max);
    over(flags.window_L, c.window_L);
    over(flags.window_K, c.window_K);
    over(flags.tower_max, c.tower_max);
    over(flags.format, c.format);
    over(flags.out, c.out);
    validate(c);
    return c;
}

void validate(const RunConfig& c)
{
    if (c.p != 2 && c.p != 3 && c.p != 5 && c.p != 7)
        throw std::invalid_argument(fmt::format("p = {} is not a supported prime (2, 3, 5, 7)", c.p));
    auto positive = [](const char* name, int v) {
        if (v < 1)
            throw std::invalid_argument(fmt::format("{} must be positive, got {}", name, v));
    };
    positive("D", c.D);
    positive("window L", c.window_L);
    positive("window K", c.window_K);
    positive("tower max", c.tower_max);
    if (c.s_max < 0 || c.t_max < 0)
        throw std::invalid_argument("the chart window must be non-negative");
    if (c.format != "json" && c.format != "svg" && c.format != "ascii")
        throw std::invalid_argument(fmt::format("unknown format '{}'", c.format));
}

}  // namespace ue2::cli
