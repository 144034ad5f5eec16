#include <codeforest/cli.hpp>
#include <codeforest/error.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace codeforest {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text, std::size_t line) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::ConfigSyntax, fmt::format("line {}: bad value for {}: '{}'", line, key, text));
    }
    return value;
}

double positive(std::string_view key, std::string_view text, std::size_t line) {
    const auto v = parse_number<double>(key, text, line);
    if (!(v > 0.0)) throw Error(ErrorKind::NonPositiveValue, fmt::format("{} must be positive", key));
    return v;
}

} // namespace

Config parse_config(std::string_view text) {
    Config cfg;
    std::map<std::string_view, double*> reals{
        {"s_min", &cfg.layout.s_min},
        {"tier_drop", &cfg.layout.tier_drop},
        {"base_radius_per_class", &cfg.layout.base_radius_per_class},
        {"island_margin", &cfg.layout.island_margin},
        {"h0", &cfg.visual.h0},
        {"h1", &cfg.visual.h1},
        {"r0", &cfg.visual.r0},
        {"c", &cfg.visual.c},
        {"leaf_radius", &cfg.visual.leaf_radius},
        {"canopy_coefficient", &cfg.visual.canopy_coefficient},
        {"min_canopy_radius", &cfg.visual.min_canopy_radius},
        {"channel_width", &cfg.visual.channel_width},
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::ConfigSyntax, fmt::format("line {}: expected 'key = value'", line_no));
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (auto it = reals.find(key); it != reals.end()) {
            *it->second = positive(key, value, line_no);
        } else if (key == "seed") {
            // Zero is a legitimate seed; only the mapping parameters must be positive.
            cfg.layout.seed = parse_number<std::uint64_t>(key, value, line_no);
        } else if (key == "segments") {
            const auto v = positive(key, value, line_no);
            if (v != static_cast<std::uint32_t>(v) || v < 8) {
                throw Error(ErrorKind::ConfigSyntax, fmt::format("line {}: segments must be an integer >= 8", line_no));
            }
            cfg.visual.segments = static_cast<std::uint32_t>(v);
        } else if (key.starts_with("color.")) {
            const auto name = key.substr(6);
            auto mat = std::find_if(cfg.palette.begin(), cfg.palette.end(),
                                    [&](const Material& m) { return m.name == name; });
            if (mat == cfg.palette.end()) throw Error(ErrorKind::UnknownKey, std::string(key));
            std::istringstream parts{std::string(value)};
            std::array<double, 4> rgba{};
            std::string token;
            std::size_t n = 0;
            while (n < 4 && parts >> token) {
                rgba[n++] = parse_number<double>(key, token, line_no);
            }
            if (n != 4 || parts >> token) {
                throw Error(ErrorKind::ConfigSyntax, fmt::format("line {}: {} needs four components", line_no, key));
            }
            for (double v : rgba) {
                if (v < 0.0 || v > 1.0) {
                    throw Error(ErrorKind::ConfigSyntax,
                                fmt::format("line {}: {} components must lie in [0, 1]", line_no, key));
                }
            }
            mat->base_color = rgba;
        } else {
            throw Error(ErrorKind::UnknownKey, std::string(key));
        }
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ConfigSyntax, "cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace codeforest
