#pragma once

#include <codeforest/code_model.hpp>

#include <cstdint>
#include <vector>

namespace codeforest {

struct Vec2 {
    double x = 0.0;
    double z = 0.0;
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct LayoutParams {
    std::uint64_t seed = 0;
    double island_margin = 4.0;
    double s_min = 2.0;
    double tier_drop = 1.0;
    double base_radius_per_class = 1.5;
};

// A terraced cone. Tier k is a flat plateau at tier_heights[k] whose outer
// edge sits at tier_radii[k]; a sloped wall of horizontal extent wall_run
// then drops to the next plateau (or to y = 0 after the last tier).
struct IslandLayout {
    std::uint32_t package_index = 0;
    Vec2 center;
    double radius = 0.0;
    std::vector<double> tier_heights; // per layer, non-increasing
    std::vector<double> tier_radii;   // island-local, increasing
    double wall_run = 0.0;
};

struct TreePlacement {
    std::uint32_t class_index = 0;
    Vec2 position; // world
    std::uint32_t layer = 0;
    double trunk_base_y = 0.0;
};

struct ChannelPath {
    std::uint32_t parent = 0; // class index
    std::uint32_t child = 0;
    std::vector<Vec3> polyline; // world
};

struct ForestLayout {
    std::vector<std::uint32_t> layers;    // per class
    std::vector<IslandLayout> islands;    // per package
    std::vector<TreePlacement> trees;     // per class
    std::vector<ChannelPath> channels;    // per inheritance edge, edge order
};

/// Longest path from any root ancestor. Throws Error{InheritanceCycle}.
std::vector<std::uint32_t> assign_layers(const CodeModel& model);

std::vector<IslandLayout> place_islands(const CodeModel& model, const LayoutParams& params);

/// `members` must be the island's classes in name order; `layers` is the
/// per-class vector from assign_layers.
std::vector<TreePlacement> place_trees(const IslandLayout& island, std::span<const std::uint32_t> members,
                                       std::span<const std::uint32_t> layers, const LayoutParams& params);

std::vector<ChannelPath> route_channels(const CodeModel& model, std::span<const IslandLayout> islands,
                                        std::span<const TreePlacement> trees);

ForestLayout layout_forest(const CodeModel& model, const LayoutParams& params);

} // namespace codeforest
