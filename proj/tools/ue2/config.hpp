#pragma once

#include <optional>
#include <string>

namespace ue2::cli {

// Precedence: command-line flags, then the config file, then these defaults.
struct RunConfig
{
    int p = 2;
    int D = 10;
    int s_max = 2;
    int t_max = 6;
    int window_L = 8;
    int window_K = 8;
    int tower_max = 3;
    std::string format = "json";
    std::string out;  // empty: stdout
};

struct FlagValues
{
    std::optional<int> p, D, s_max, t_max, window_L, window_K, tower_max;
    std::optional<std::string> format, out;
};

// Throws std::invalid_argument with a readable reason.
RunConfig resolve_config(const std::string& config_path, const FlagValues& flags);
void validate(const RunConfig& c);

}  // namespace ue2::cli
