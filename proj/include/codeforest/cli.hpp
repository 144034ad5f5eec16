#pragma once

#include <codeforest/geometry.hpp>
#include <codeforest/layout.hpp>

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace codeforest {

struct Config {
    LayoutParams layout;
    VisualParams visual;
    std::vector<Material> palette = default_palette();
};

/// Flat `key = value` text with `#` comments. Recognised keys: seed, s_min,
/// tier_drop, base_radius_per_class, island_margin, h0, h1, r0, c,
/// leaf_radius, canopy_coefficient, min_canopy_radius, channel_width,
/// segments, and `color.<material> = r g b a`.
/// Throws Error{UnknownKey | NonPositiveValue | ConfigSyntax}.
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

/// Exit status: 0 success, 1 parse-fatal or model error, 2 bad arguments,
/// missing corpus root, or bad config.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace codeforest
